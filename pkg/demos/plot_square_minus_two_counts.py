"""
Counting primes p with p^2 - 2 prime
====================================

Count the pairs (p, p^2 - 2) up to powers of ten and compare them with
1.6916 * li_2(x). The ratio settles near 1 quickly.
"""
import matplotlib.pyplot as plt
import numpy as np

from primepairs import PairFamily, count_pairs, li, table_report

family = PairFamily(2, -2)
xs = [10**i for i in range(1, 7)]
records = table_report(family, xs, 1.6916)

for r in records:
    print(f"{r.x:>8} {r.pair_count:>6} {r.predicted:>6} {r.ratio:.3f}")

###############################################################################
# The running count against the prediction
# ----------------------------------------
# count_pairs is cheap below 10^6, so sample it on a finer grid.

grid = np.unique(np.logspace(2, 6, 40).astype(int))
counts = [count_pairs(family, int(x)) for x in grid]
predicted = [1.6916 * li(2, x) for x in grid]

fig, ax = plt.subplots()
ax.loglog(grid, counts, "o", ms=3, label="pairs found")
ax.loglog(grid, predicted, label="1.6916 li_2(x)")
ax.set_xlabel("x")
ax.legend()
plt.show()
