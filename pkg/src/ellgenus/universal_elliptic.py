"""The universal complex elliptic genus over Q[A, B, C, D].

The genus is determined by the unique Laurent solution h(x) = 1/x + c_1 +
c_2 x + ... of the differential equation (h')^2 = S(h) for the quartic
S(y) = y^4 + q_1 y^3 + q_2 y^2 + q_3 y + q_4; with f defined by f'/f = h
and f = x + O(x^2), the characteristic series is Q(x) = x/f(x).  The
coefficients live in Q[q_1..q_4] (q_i of weight i) or, after the standard
coordinate change, in Q[A, B, C, D] (weights 1..4).  Everything is generic
over the coefficient ring, so symbolic generators and rational point
values share one code path.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra_kernel import PolyRing, QQ, TruncatedSeries
from .cohomology_models import (
    chern_vector,
    cp_model,
    product_model,
    twisted_proj_bundle_model,
)
from .genus_engine import GenusSpec, evaluate

Q_RING = PolyRing(("q1", 1), ("q2", 2), ("q3", 3), ("q4", 4))
ABCD_RING = PolyRing(("A", 1), ("B", 2), ("C", 3), ("D", 4))

DEFAULT_ORDER = 12


class QuarticData:
    """S(y) = y^4 + q1 y^3 + q2 y^2 + q3 y + q4 over an exact ring."""

    def __init__(self, q1, q2, q3, q4, ring=QQ):
        self.ring = ring
        self.q = (q1, q2, q3, q4)

    @classmethod
    def generic(cls):
        q1, q2, q3, q4 = Q_RING.gens()
        return cls(q1, q2, q3, q4, ring=Q_RING)

    def __iter__(self):
        return iter(self.q)

    def __eq__(self, other):
        return isinstance(other, QuarticData) and list(self.q) == list(other.q)

    def __repr__(self):
        return f"QuarticData{self.q!r}"


class ABCDPoint:
    """A point (or the generic point) of the coefficient ring Q[A,B,C,D]."""

    def __init__(self, A, B, C, D, ring=QQ):
        self.ring = ring
        self.A, self.B, self.C, self.D = A, B, C, D

    @classmethod
    def generic(cls):
        A, B, C, D = ABCD_RING.gens()
        return cls(A, B, C, D, ring=ABCD_RING)

    def __iter__(self):
        return iter((self.A, self.B, self.C, self.D))

    def __eq__(self, other):
        return isinstance(other, ABCDPoint) and list(self) == list(other)

    def g2(self):
        return self.B ** 2 * Fraction(1, 48) - Fraction(2) * self.D

    def g3(self):
        return (
            -(self.B ** 3) * Fraction(1, 1728)
            + self.B * self.D * Fraction(1, 12)
            - self.C ** 2
        )

    def discriminant(self):
        return self.g2() ** 3 - Fraction(27) * self.g3() ** 2

    def __repr__(self):
        return f"ABCDPoint({self.A}, {self.B}, {self.C}, {self.D})"


# ---------------------------------------------------------------------------
# coordinate changes
# ---------------------------------------------------------------------------


def abcd_to_q(p):
    """(A,B,C,D) -> (q1..q4) so that both describe the same quartic."""
    A, B, C, D = p
    h = Fraction(1, 2)
    q1 = 2 * A
    q2 = Fraction(3, 2) * A ** 2 - B * Fraction(1, 4)
    q3 = A ** 3 * h - A * B * Fraction(1, 4) + 4 * C
    q4 = (
        A ** 4 * Fraction(1, 16)
        - A ** 2 * B * Fraction(1, 16)
        + 2 * (A * C)
        + B ** 2 * Fraction(1, 64)
        - 2 * D
    )
    return QuarticData(q1, q2, q3, q4, ring=p.ring)


def q_to_abcd(q):
    """(q1..q4) -> (A,B,C,D); inverse of abcd_to_q."""
    q1, q2, q3, q4 = q
    A = q1 * Fraction(1, 2)
    B = Fraction(3, 2) * q1 ** 2 - 4 * q2
    C = q1 ** 3 * Fraction(1, 32) - q1 * q2 * Fraction(1, 8) + q3 * Fraction(1, 4)
    D = (
        Fraction(3, 128) * q1 ** 4
        - q1 ** 2 * q2 * Fraction(1, 8)
        + q1 * q3 * Fraction(1, 8)
        + q2 ** 2 * Fraction(1, 8)
        - q4 * Fraction(1, 2)
    )
    return ABCDPoint(A, B, C, D, ring=q.ring)


# ---------------------------------------------------------------------------
# the ODE solution
# ---------------------------------------------------------------------------


def ode_residual(h, S):
    """(h')^2 - S(h), valid where the truncated products are exact."""
    q1, q2, q3, q4 = S
    hp = h.derivative()
    h2 = h * h
    h3 = h2 * h
    h4 = h2 * h2
    q4_series = TruncatedSeries(h.ring, 0, [q4], max(h4.order, 0))
    rhs = h4 + h3 * q1 + h2 * q2 + h * q3 + q4_series
    return (hp * hp - rhs).truncate(h4.order)


def solve_h(S, order):
    """The unique h = 1/x + c_1 + c_2 x + ... with (h')^2 = S(h).

    Returns a Laurent TruncatedSeries with low = -1 carrying c_1..c_order
    (exponents 0..order-1).  Each coefficient is found by inserting a
    trial value 0 and dividing the residual at x^{n-4} by the integer
    2(n-1) + 4.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    ring = S.ring
    coeffs = [ring.one] + [ring.zero] * order  # exponents -1 .. order-1
    for n in range(1, order + 1):
        h = TruncatedSeries(ring, -1, coeffs, order - 1)
        r = ode_residual(h, S).coeff(n - 4)
        coeffs[n] = r * Fraction(1, 2 * (n - 1) + 4)
    return TruncatedSeries(ring, -1, coeffs, order - 1)


def q_of_h(h, name="genus"):
    """GenusSpec with f'/f = h: Q(x) = x/f = exp(-integral(h - 1/x))."""
    ring = h.ring
    one_over_x = TruncatedSeries(ring, -1, [ring.one], h.order)
    g = (h - one_over_x).integrate()
    return GenusSpec((-g).exp(), name=name)


def universal_in_q(order=DEFAULT_ORDER):
    """phi_ell as a GenusSpec over Q[q1..q4]."""
    h = solve_h(QuarticData.generic(), order)
    return q_of_h(h, name="phi_ell(q)")


def phi_ell(order=DEFAULT_ORDER):
    """The universal elliptic genus as a GenusSpec over Q[A, B, C, D]."""
    spec = universal_in_q(order)
    images = dict(zip(Q_RING.names, abcd_to_q(ABCDPoint.generic())))
    coeffs = [
        c.substitute(images, ring=ABCD_RING) for c in spec.q.coeffs
    ]
    return GenusSpec(
        TruncatedSeries(ABCD_RING, 0, coeffs, spec.order), name="phi_ell"
    )


def specialize(spec, point, name=None):
    """Substitute a coefficient point into a symbolic GenusSpec.

    spec must be over a PolyRing whose variable names match the point's
    components: (A,B,C,D) for an ABCDPoint, (q1..q4) for a QuarticData.
    """
    ring = spec.ring
    if isinstance(point, ABCDPoint):
        images = dict(zip(("A", "B", "C", "D"), point))
    elif isinstance(point, QuarticData):
        images = dict(zip(("q1", "q2", "q3", "q4"), point))
    else:
        images = dict(point)
    target = getattr(point, "ring", QQ)
    coeffs = [c.substitute(images, ring=target) for c in spec.q.coeffs]
    return GenusSpec(
        TruncatedSeries(target, 0, coeffs, spec.order),
        name=name or f"{spec.name}|point",
    )


# ---------------------------------------------------------------------------
# test vectors from fibered quotients
# ---------------------------------------------------------------------------


def test_vectors_Q3_Q4(order=6):
    """phi_ell of the two fiber-defect classes over CP2, in q-coordinates.

    xi_3 = P(K + K^2) and xi_4 = P(K + 1 + 1) over CP2, with K the
    determinant of the tangent bundle (c_1 = 3g); the classes are
    [E(xi)] - [CP2] * [fiber].  Their genus values generate the relations
    that force chi_y-type multiplicativity.
    """
    base = cp_model(2)
    g = {1: Fraction(1)}
    K = base.scale(g, 3)
    K2 = base.scale(g, 6)
    spec = phi_ell(order)

    xi3 = twisted_proj_bundle_model(base, e_lines=[K, K2])
    q3_class = chern_vector(xi3) - chern_vector(
        product_model(base, cp_model(1))
    )
    xi4 = twisted_proj_bundle_model(base, e_lines=[K], e_trivial=2)
    q4_class = chern_vector(xi4) - chern_vector(
        product_model(base, cp_model(2))
    )
    images = dict(zip(("A", "B", "C", "D"), q_to_abcd(QuarticData.generic())))
    return tuple(
        evaluate(spec, cls).substitute(images, ring=Q_RING)
        for cls in (q3_class, q4_class)
    )
