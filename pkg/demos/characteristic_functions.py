"""
Counting poles and roots of piecewise linear functions
======================================================

A short tour of the growth functionals on a few hand-made functions.
"""

from fractions import Fraction

import tropnev as tn

# roots (slope rises) at -2 and 4, a double pole (slope drops by 2) at 1
f = tn.PLFunction.from_points([(-2, 0), (1, 3), (4, 0)], -1, 1)
print(f)
print("critical points:", tn.critical_points(f))

# proximity, counting function and characteristic at a few radii
for r in (1, 2, 5, 10):
    s = tn.characteristic_T(f, r)
    print(f"r={r:>3}  m={s.m}  N={s.N}  T={s.T}")

# Jensen's identity holds exactly, so the residual is zero at every radius
print("jensen residuals:", {r: tn.jensen_residual(f, r) for r in (1, 3, 7, 100)})

# tails are affine, so T grows linearly and the fitted order is close to one
fit = tn.growth_fit(tn.nevanlinna_table(f, range(10, 1001, 10)))
print(f"order {fit.order:.3f}  hyperorder {fit.hyperorder:.3f}  log T / r at r=1000: {fit.log_ratio[-1]:.4f}")

# exponential-type functions grow much faster; inside a window of [-20, 20]
e2 = tn.e_alpha(2, (-20, 20))
print("e_2 at 0, 1, 2, 3:", [e2(x) for x in range(4)])
fit = tn.growth_fit(tn.nevanlinna_table(e2, range(1, 20)))
print(f"order {fit.order:.3f}  log T / r at r=19: {fit.log_ratio[-1]:.4f}")

# the log-derivative ratio falls off across decades for a rational function
for r in (10, 100, 1000):
    print(r, float(tn.log_derivative_ratio(f, 1, r)))

# any rational value works as a radius; everything stays exact
print(tn.characteristic_T(f, Fraction(7, 3)))
