"""A tour of the universal elliptic genus over Q[A, B, C, D].

Prints the characteristic-series coefficients, the genus values on the
small basis manifolds, and a few classical specializations obtained by
plugging in explicit (A, B, C, D) points.
"""

from fractions import Fraction

from ellgenus.cohomology_models import catalog
from ellgenus.genus_engine import classical_genus, evaluate
from ellgenus.universal_elliptic import ABCDPoint, phi_ell, specialize

spec = phi_ell(8)

print("characteristic series Q(x) = 1 + a1 x + a2 x^2 + ...")
for k in range(1, 6):
    print(f"  a{k} = {spec.q.coeff(k)}")

print("\nvalues on the basis manifolds")
for name in ("W1", "W2", "W3", "W4", "W5", "W6"):
    print(f"  phi_ell({name}) = {evaluate(spec, catalog(name))}")

print("\nclassical specializations on CP2 and the quartic surface")
points = {
    "todd":      ABCDPoint(Fraction(1), Fraction(2), Fraction(0), Fraction(0)),
    "signature": ABCDPoint(Fraction(0), Fraction(-16), Fraction(0), Fraction(2)),
    "a_hat":     ABCDPoint(Fraction(0), Fraction(2), Fraction(0), Fraction(0)),
}
for name, pt in points.items():
    sp = specialize(spec, pt, name=name)
    direct = classical_genus(name, order=8)
    for mname in ("CP2", "W2"):
        m = catalog(mname)
        v, w = evaluate(sp, m), evaluate(direct, m)
        assert v == w
        print(f"  {name}({mname}) = {v}")
