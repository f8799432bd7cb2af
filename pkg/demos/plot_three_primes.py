"""
Cubic classes of primes
=======================

For p = 1 mod 3 the polynomial n^3 - q has either three roots or none
modulo p. The primes with three roots are the 3-primes of q; they depend
on q only up to sign, squaring and cube factors.
"""
import matplotlib.pyplot as plt
import numpy as np

from primepairs import three_primes_below

for q in (2, 3, 6, 10, 22):
    print(q, three_primes_below(q, 500))

###############################################################################
# Same classes for related q
# --------------------------

print(three_primes_below(2, 500) == three_primes_below(4, 500) == three_primes_below(16, 500))
print(three_primes_below(3, 500) == three_primes_below(24, 500))

###############################################################################
# Density among p = 1 mod 3
# -------------------------
# About a third of those primes are 3-primes when q is not a cube.

bound = 200_000
for q in (2, 3, 5):
    ps = np.array(three_primes_below(q, bound))
    plt.plot(ps, np.arange(1, len(ps) + 1) / ps * np.log(ps), label=f"q={q}")
plt.xlabel("p")
plt.ylabel("3-primes up to p, times log p / p")
plt.legend()
plt.show()
