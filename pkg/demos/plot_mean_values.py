"""
Averages of pair constants
==========================

Window means of C^k_{2r} and the Hardy-Littlewood partial sums
S_m = C_2 + C_4 + ... + C_{2m}, whose mean tends to 1.
"""
import matplotlib.pyplot as plt

from primepairs import hl_partial_sum, mean_gamma, mean_S, s_m_deviation, subsequence_mean

print("C^2 over 1 <= |r| <= 15:", round(mean_S(2, 30, 10**5).mean, 4))
print("C^3 over 1 <= r <= 12:", round(mean_S(3, 24, 10**5, window="positive").mean, 4))
print("gamma^2 over 1 <= q <= 20:", round(mean_gamma(2, range(1, 21), 10**5), 4))

###############################################################################
# Subsequences
# ------------
# Restricting to multiples of 3 picks up an extra factor 3/2 on average.

for h in (2, 3, 5):
    print(h, round(subsequence_mean(h, 10**5), 4))

###############################################################################
# Partial sums
# ------------

ms = [10**i for i in range(2, 7)]
print([round(hl_partial_sum(m) / m, 6) for m in ms])

plt.semilogx(ms, [s_m_deviation(m) for m in ms], "o-")
plt.xlabel("m")
plt.ylabel("(S_m - m + log(m)/2) / log(m)^(2/3)")
plt.show()
