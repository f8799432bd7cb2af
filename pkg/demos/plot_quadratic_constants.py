"""
Constants for p^2 + 2r
======================

Truncated Euler products for the pair constants C^2_{2r} and the
single-polynomial constants gamma^2_q. Zeros come in two kinds: a
local obstruction at some prime (``vanished``) or a reducible
polynomial (``reducible``).
"""
import matplotlib.pyplot as plt

from primepairs import OffsetPolynomial, PairFamily, c_constant, gamma_constant

P = 10**5

for two_r in (2, 4, 10, 12, -2, -4, -12):
    est = c_constant(PairFamily(2, two_r), P)
    flag = "vanished" if est.vanished else "reducible" if est.reducible else ""
    print(f"C_{two_r:<4} = {est.value:.4f} {flag}")

###############################################################################
# How fast the product settles
# ----------------------------
# The tail of the product shrinks roughly like 1/log P.

bounds = [10**i for i in range(2, 7)]
values = [c_constant(PairFamily(2, -2), b).value for b in bounds]
gammas = [gamma_constant(OffsetPolynomial(2, -2), b).value for b in bounds]

fig, ax = plt.subplots()
ax.semilogx(bounds, values, "o-", label="C^2_{-2}")
ax.semilogx(bounds, gammas, "s-", label="gamma^2_{-2}")
ax.set_xlabel("truncation bound P")
ax.legend()
plt.show()
