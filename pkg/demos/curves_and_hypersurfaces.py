"""
Curves into tropical projective space
=====================================

Build a curve from convex components, evaluate polynomials along it and
check that the first main theorem residual does not depend on the radius.
"""

import tropnev as tn

g0 = tn.PLFunction.from_monomials([(0, 0), (-1, -2)])
g1 = tn.PLFunction.from_monomials([(0, 0), (1, -1), (2, -3)])
curve = tn.TropCurve([g0, g1])
print("f(0) =", curve(0), " normalized:", tn.normalize(curve(0)))

p = tn.TropPolynomial(2, 2, {(2, 0): 0, (1, 1): 1, (0, 2): -1})
pf = tn.compose(p, curve)
print("P o f:", pf)
print("maximizing terms at x=0:", tn.maximizing_terms(p, curve(0)))

# the residual equals the closed-form constant at every radius
const = tn.fmt_constant(p, curve)
print("expected constant:", const)
print("residuals:", [tn.fmt_residual(p, curve, r) for r in (1, 2, 10, 57)])

# a meromorphic function gives a curve [g : h] with f = h - g
f = tn.random_rational(3)
mero = tn.curve_from_meromorphic(f)
print(f)
print("components:", mero.components)

# values of TP^1 are linear forms; a value above sup f absorbs it
for a in (tn.supremum(f) + 1, 0):
    print(a, tn.absorption_check(f, a, [5, 10, 20]))

# tropical determinants and the Casoratian of a few entire functions
A = tn.TropMatrix([[0, 3, tn.BOTTOM], [1, 0, 2], [tn.BOTTOM, 4, 0]])
print("det:", tn.trop_det(A), " regular:", tn.is_regular(A))
cas = tn.casoratian([g0, g1], 1)
print("casoratian:", cas, " entire:", tn.is_entire(cas))
