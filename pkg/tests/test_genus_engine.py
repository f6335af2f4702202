from fractions import Fraction
from math import factorial

import pytest

from ellgenus.algebra_kernel import PolyRing, QQ, TruncatedSeries
from ellgenus.cohomology_models import (
    ChernVector,
    catalog,
    chern_vector,
    cp_model,
    product_model,
    quartic_surface,
)
from ellgenus.genus_engine import (
    BadParams,
    DimensionMismatch,
    EULER_POINT,
    SIGNATURE_POINT,
    GenusSpec,
    classical_genus,
    evaluate,
    formal_group_law,
    genus_from_log,
    multiplicative_class,
    multiplicative_sequence,
)

F = Fraction


# ---------------------------------------------------------------------------
# classical genera against independent oracles
# ---------------------------------------------------------------------------


def test_todd_of_projective_spaces():
    todd = classical_genus("todd", order=8)
    for n in range(1, 7):
        assert evaluate(todd, cp_model(n)) == 1


def test_todd_multiplicative_sequence_low_terms():
    todd = classical_genus("todd", order=4)
    ms = multiplicative_sequence(todd, 3)
    assert ms.ks[1] == {(1,): F(1, 2)}
    assert ms.ks[2] == {(1, 1): F(1, 12), (2,): F(1, 12)}
    assert ms.ks[3] == {(2, 1): F(1, 24)}


def test_signature_values():
    sig = classical_genus("signature", order=8)
    assert evaluate(sig, cp_model(2)) == 1
    assert evaluate(sig, cp_model(4)) == 1
    assert evaluate(sig, product_model(cp_model(1), cp_model(1))) == 0
    assert evaluate(sig, quartic_surface()) == -16
    assert evaluate(sig, catalog("W4")) == 2


def test_a_hat_values():
    ah = classical_genus("a_hat", order=8)
    assert evaluate(ah, quartic_surface()) == 2
    assert evaluate(ah, cp_model(2)) == F(-1, 8)
    assert evaluate(ah, catalog("W4")) == 0


def test_euler_genus_counts_top_chern():
    eu = classical_genus("euler", order=8)
    assert evaluate(eu, cp_model(3)) == 4
    assert evaluate(eu, quartic_surface()) == 24
    assert evaluate(eu, product_model(cp_model(1), cp_model(1))) == 4


def test_chi_y_on_projective_spaces():
    # chi_y(CP_{N-1}) = 1 + (-y) + ... + (-y)^{N-1}
    spec = classical_genus("chi_y", order=8)
    ring = spec.ring
    y = ring.gen("y")
    for N in range(2, 6):
        expected = ring.zero
        for i in range(N):
            expected = expected + (-y) ** i
        assert evaluate(spec, cp_model(N - 1)) == expected


def test_chi_y_of_quartic_surface():
    spec = classical_genus("chi_y", order=6)
    ring = spec.ring
    y = ring.gen("y")
    # (1/12)(1+y)^2 c1^2 + (1/12)(1 - 10y + y^2) c2 with c1^2 = 0, c2 = 24
    assert evaluate(spec, quartic_surface()) == (
        (ring.one - y * 10 + y * y) * 2
    )


def test_chi_y_of_w3():
    spec = classical_genus("chi_y", order=6)
    y = spec.ring.gen("y")
    assert evaluate(spec, catalog("W3")) == y * y - y


def test_chi_y_specialization_points():
    # y = 0 -> Todd, y = SIGNATURE_POINT -> signature, y = EULER_POINT -> Euler
    manifolds = [cp_model(2), cp_model(3), quartic_surface(),
                 product_model(cp_model(1), cp_model(2))]
    at0 = classical_genus("chi_y", params={"y": 0}, order=8)
    at1 = classical_genus("chi_y", params={"y": SIGNATURE_POINT}, order=8)
    atm1 = classical_genus("chi_y", params={"y": EULER_POINT}, order=8)
    todd = classical_genus("todd", order=8)
    sig = classical_genus("signature", order=8)
    eu = classical_genus("euler", order=8)
    for m in manifolds:
        assert evaluate(at0, m) == evaluate(todd, m)
        assert evaluate(at1, m) == evaluate(sig, m)
        assert evaluate(atm1, m) == evaluate(eu, m)


def test_chi_y_integrality_on_catalog():
    spec = classical_genus("chi_y", order=6)
    for name in ("W1", "W2", "W3", "W4", "W5", "W6", "CP3", "TwCP(2,2)"):
        val = evaluate(spec, catalog(name))
        for c in val.terms.values():
            assert c.denominator == 1


def test_twisted_todd_genus():
    # chi(., K^{1/2}) equals A-hat on the quartic surface (c1 = 0 there)
    spec = classical_genus("chi_KkN", params={"k": 1, "N": 2}, order=8)
    assert evaluate(spec, quartic_surface()) == 2
    # k = 0 recovers Todd
    spec0 = classical_genus("chi_KkN", params={"k": 0, "N": 1}, order=8)
    todd = classical_genus("todd", order=8)
    for n in range(1, 5):
        assert evaluate(spec0, cp_model(n)) == evaluate(todd, cp_model(n))
    with pytest.raises(BadParams):
        classical_genus("chi_KkN", params={"k": 1})


def test_a_tilde_on_projective_spaces():
    # at B = 0 the value on CP_{N-1} is ((A/2) N)^{N-1} / (N-1)!
    spec = classical_genus("a_tilde", order=8)
    ring = spec.ring
    A = ring.gen("A")
    for N in range(2, 6):
        val = evaluate(spec, cp_model(N - 1))
        at_b0 = val.substitute({"A": A, "B": F(0)}, ring=ring)
        expected = (A * F(N, 2)) ** (N - 1) * F(1, factorial(N - 1))
        assert at_b0 == expected


# ---------------------------------------------------------------------------
# structural laws
# ---------------------------------------------------------------------------


def test_ring_homomorphism_on_products():
    specs = [classical_genus("todd", order=7),
             classical_genus("signature", order=7),
             classical_genus("chi_y", order=7)]
    pairs = [(cp_model(1), cp_model(2)), (cp_model(2), quartic_surface()),
             (cp_model(1), cp_model(1))]
    for spec in specs:
        for x, y in pairs:
            lhs = evaluate(spec, product_model(x, y))
            rhs = evaluate(spec, x) * evaluate(spec, y)
            assert lhs == rhs


def test_scaling_action():
    # replacing Q(x) by Q(sx) multiplies the value in dimension n by s^n
    todd = classical_genus("todd", order=6)
    ring = PolyRing(("s", 1))
    s = ring.gen("s")
    scaled = GenusSpec(TruncatedSeries(
        ring, 0,
        [ring.from_fraction(todd.q.coeff(e)) * s ** e for e in range(7)], 6,
    ))
    for m in (cp_model(2), cp_model(3), quartic_surface()):
        assert evaluate(scaled, m) == s ** m.dim * evaluate(todd, m)


def test_su_insensitivity():
    # Q(x) vs e^{a x} Q(x) agree on classes without c1-numbers
    todd = classical_genus("todd", order=8)
    a = F(1, 3)
    ex = TruncatedSeries.from_function(
        QQ, lambda e: a ** e / factorial(e), 8
    )
    twisted = GenusSpec((todd.q * ex).truncate(8))
    for name in ("W2", "W4", "W5", "W6"):
        m = catalog(name)
        assert chern_vector(m).is_su()
        assert evaluate(twisted, m) == evaluate(todd, m)
    # and they genuinely differ on CP2 (c1-numbers present)
    assert evaluate(twisted, cp_model(2)) != evaluate(todd, cp_model(2))


def test_dimension_mismatch_raises():
    todd = classical_genus("todd", order=2)
    with pytest.raises(DimensionMismatch):
        evaluate(todd, cp_model(3))


def test_trivial_genus():
    one = TruncatedSeries.one_series(QQ, 6)
    spec = GenusSpec(one)
    ms = multiplicative_sequence(spec, 4)
    for m in range(1, 5):
        assert ms.ks[m] == {}
    assert evaluate(spec, cp_model(3)) == 0


# ---------------------------------------------------------------------------
# logarithm and formal group law
# ---------------------------------------------------------------------------


def test_genus_from_log_identity():
    g = TruncatedSeries.x_series(QQ, 6)
    spec = genus_from_log(g)
    assert spec.q == TruncatedSeries.one_series(QQ, spec.order)


def test_genus_from_log_todd():
    # g(y) = sum y^{n+1}/(n+1) = -log(1-y) gives the Todd genus
    g = TruncatedSeries.from_function(
        QQ, lambda e: F(1, e) if e >= 1 else F(0), 8
    )
    spec = genus_from_log(g)
    todd = classical_genus("todd", order=spec.order)
    assert spec.q == todd.q.truncate(spec.order)


def test_genus_from_log_signature():
    # g(y) = artanh(y) gives x/tanh(x)
    g = TruncatedSeries.from_function(
        QQ, lambda e: F(1, e) if e % 2 == 1 else F(0), 9
    )
    spec = genus_from_log(g)
    sig = classical_genus("signature", order=spec.order)
    assert spec.q == sig.q.truncate(spec.order)


def test_log_series_roundtrip():
    todd = classical_genus("todd", order=8)
    g = todd.log_series()
    # g(CP_n-integrals): coefficient of y^{n+1} is phi(CP_n)/(n+1) = 1/(n+1)
    for n in range(0, 7):
        assert g.coeff(n + 1) == F(1, n + 1)


def test_formal_group_law_trivial_and_todd():
    one = TruncatedSeries.one_series(QQ, 6)
    Fuv = formal_group_law(GenusSpec(one), 6)
    u = {(1, 0): F(1)}
    assert Fuv.terms == {(1, 0): F(1), (0, 1): F(1)}
    todd = classical_genus("todd", order=6)
    Ftodd = formal_group_law(todd, 6)
    assert Ftodd.terms == {(1, 0): F(1), (0, 1): F(1), (1, 1): F(-1)}


def test_formal_group_law_axioms():
    sig = classical_genus("signature", order=6)
    Fuv = formal_group_law(sig, 6)
    # commutativity
    assert Fuv.permute((1, 0)) == Fuv
    # F(u, 0) = u
    from ellgenus.algebra_kernel import MultiPoly
    zero = MultiPoly.zero(QQ, 2, cap=6)
    u_only = Fuv.substitute_var(1, zero)
    assert u_only.terms == {(1, 0): F(1)}


# ---------------------------------------------------------------------------
# total multiplicative class
# ---------------------------------------------------------------------------


def test_multiplicative_class_integrates_to_genus():
    for name in ("todd", "signature", "a_hat"):
        spec = classical_genus(name, order=8)
        for m in (cp_model(2), cp_model(3), quartic_surface()):
            K = multiplicative_class(spec, m)
            assert m.integrate(m.degree_part(K, m.dim)) == evaluate(spec, m)


def test_multiplicative_class_todd_cp2():
    todd = classical_genus("todd", order=4)
    m = cp_model(2)
    K = multiplicative_class(todd, m)
    # 1 + (3/2) g + g^2
    assert K == {0: F(1), 1: F(3, 2), 2: F(1)}


def test_multiplicative_class_whitney():
    # K of a Whitney sum factors: use c(TCP2) * c(TCP1) inside CP2 x CP1
    todd = classical_genus("todd", order=6)
    x, y = cp_model(2), cp_model(1)
    m = product_model(x, y)
    cx = {(a, y.unit): c for a, c in x.chern.items()}
    cy = {(x.unit, b): c for b, c in y.chern.items()}
    Kx = multiplicative_class(todd, m, cx)
    Ky = multiplicative_class(todd, m, cy)
    assert multiplicative_class(todd, m) == m.mul(Kx, Ky)
