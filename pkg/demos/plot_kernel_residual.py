"""
Sieving kernel and residual
===========================

The cubic kernel E is even, equals 1 at 0 and vanishes outside [-1, 1];
its area on [0, 1] is 3/8. Weighting the constants C^k_{2r} by
E(2r/lambda) and subtracting lambda * 3/8 leaves a residual that grows
much more slowly than lambda.
"""
import matplotlib.pyplot as plt
import numpy as np

from primepairs import SievingKernel, cubic_shape, kernel_area_quadrature, residual_R

v = np.linspace(-1.2, 1.2, 500)
plt.plot(v, [cubic_shape(t) for t in v])
plt.title("cubic sieving kernel")
plt.show()

print("area by quadrature:", kernel_area_quadrature(SievingKernel()))

###############################################################################
# Residual against lambda
# -----------------------

lams = [50, 100, 200, 400, 800]
res = [residual_R(2, lam, 10**5) for lam in lams]
for lam, r in zip(lams, res):
    print(lam, round(r, 4), round(abs(r) / lam, 5))

plt.plot(lams, np.abs(res) / np.array(lams), "o-")
plt.xlabel("lambda")
plt.ylabel("|R_2(lambda)| / lambda")
plt.show()
