from fractions import Fraction

import pytest

from ellgenus.algebra_kernel import QQ, RationalFunction, TruncatedSeries
from ellgenus.cohomology_models import catalog, cp_model
from ellgenus.genus_engine import classical_genus, evaluate
from ellgenus.level_n import (
    AB_RING,
    GradedIdealPresentation,
    InsufficientOrder,
    LevelNData,
    compute_level_data,
    cusp_points,
    degree_h0,
    eliminate,
    in_ideal,
    kernel_membership,
    level2_modular_forms,
    poincare_series,
    reduce_mod_ideal,
    t_poly,
    to_q_coords,
)
from ellgenus.universal_elliptic import ABCD_RING, Q_RING

F = Fraction
A, B, C, D = ABCD_RING.gens()
q1, q2, q3, q4 = Q_RING.gens()


# ---------------------------------------------------------------------------
# the relations R_{N-1}, R_{N+1}
# ---------------------------------------------------------------------------


def test_insufficient_order():
    with pytest.raises(InsufficientOrder):
        compute_level_data(3, order=7)


def test_relations_are_homogeneous():
    for N in (2, 3, 4, 5):
        data = compute_level_data(N)
        assert data.r_lower.is_homogeneous(N - 1)
        assert data.r_upper.is_homogeneous(N + 1)
        # leading A-power normalized to 1
        assert data.r_lower.coeff((N - 1, 0, 0, 0)) == 1


def test_level2_relations():
    data = compute_level_data(2)
    assert data.r_lower == A
    # the variety of (R_1, R_3) contains the line A = C = 0
    val = data.r_upper.substitute(
        {"A": F(0), "B": B, "C": F(0), "D": D}, ring=ABCD_RING
    )
    assert val.is_zero()


def test_level3_relations_match_known_ideal():
    data = compute_level_data(3)
    assert data.r_lower == A * A - B * F(1, 18)
    assert data.r_upper == A * C - D * F(1, 3)
    # in q-coordinates the ideal is <q2 + 3/4 q1^2, q4 + 1/2 q1 q3>
    g1 = q2 + q1 * q1 * F(3, 4)
    g2 = q4 + q1 * q3 * F(1, 2)
    ours = [data.r_lower_q(), data.r_upper_q()]
    assert in_ideal(g1, ours) and in_ideal(g2, ours)
    assert in_ideal(ours[0], [g1, g2]) and in_ideal(ours[1], [g1, g2])


def test_zolotarev_condition_consumed():
    # d_{N-1} itself is the lower relation (up to normalization)
    for N in (2, 3, 4):
        data = compute_level_data(N)
        dq = data.d[N - 1]
        assert in_ideal(to_q_coords(data.r_lower), [dq])


def test_higher_constraints_lie_in_the_ideal():
    # every further constraint should reduce to zero modulo the two
    # relations (checked, not assumed, for small N)
    for N in (2, 3):
        data = compute_level_data(N, order=2 * N + 6)
        gens = [data.r_lower_q(), data.r_upper_q()]
        for _, c in data.constraints:
            assert in_ideal(c, gens)


def test_eliminant_level3():
    data = compute_level_data(3)
    res = eliminate(data)
    assert res.monic() == (B * C * C - 2 * (D * D)).monic()
    res_q = eliminate(data, coords="q")
    assert res_q.monic() == (q2 * q3 * q3 + 3 * (q4 * q4)).monic()


def test_eliminant_weights():
    for N in (2, 3, 4):
        res = eliminate(compute_level_data(N))
        assert res.is_homogeneous(N * N - 1)
        assert res.degree_in("A") == -1 or res.degree_in("A") == 0


def test_eliminant_level2_vanishes_at_classical_points():
    res = eliminate(compute_level_data(2))
    for b, c, d in ((F(-16), F(0), F(2)), (F(2), F(0), F(0))):
        v = res.substitute({"A": F(0), "B": b, "C": c, "D": d})
        assert v == 0


# ---------------------------------------------------------------------------
# cusps
# ---------------------------------------------------------------------------


def test_cusp_points_level2():
    pts = cusp_points(2)
    rational = [tuple(p) for p in pts if p.ring is QQ]
    assert (F(0), F(2), F(0), F(0)) in rational
    # type (ii) with y = 1 collapses to a rational point (0, -4, 0, 1/8)
    others = [p for p in pts if p.ring is not QQ]
    assert len(others) == 1
    p = others[0]
    vals = [x.coeffs[0] for x in p]
    assert vals == [F(0), F(-4), F(0), F(1, 8)]


def test_cusp_points_satisfy_relations():
    for N in (2, 3, 4):
        data = compute_level_data(N)
        for p in cusp_points(N):
            images = dict(zip(("A", "B", "C", "D"), p))
            for rel in (data.r_lower, data.r_upper):
                v = rel.substitute(images, ring=p.ring)
                if isinstance(v, Fraction):
                    assert v == 0
                else:
                    assert v.is_zero()


# ---------------------------------------------------------------------------
# T_{N-1}
# ---------------------------------------------------------------------------


def test_t_poly_small_cases():
    tA, tB = AB_RING.gens()
    assert t_poly(2) == tA
    assert t_poly(3) == tA * tA - tB * F(1, 18)
    for N in range(2, 8):
        assert t_poly(N).is_homogeneous(N - 1)


def test_a_tilde_of_cp_is_multiple_of_t_poly():
    spec = classical_genus("a_tilde", order=8)
    for N in range(2, 6):
        v = evaluate(spec, cp_model(N - 1))
        t = t_poly(N)
        assert not v.is_zero()
        lead_e, lead_c = t.leading()
        ratio = v.coeff(lead_e) / lead_c
        assert ratio != 0
        assert v == t * ratio


# ---------------------------------------------------------------------------
# Poincare series and h0
# ---------------------------------------------------------------------------


def _an_presentation(N):
    return GradedIdealPresentation((1, 2, 3, 4), (N - 1, N + 1))


def test_poincare_series_an():
    p = poincare_series(_an_presentation(3))
    expected = (
        RationalFunction.one_minus_t_power(2)
        * RationalFunction.one_minus_t_power(4)
        / RationalFunction.one_minus_t_power(1)
        / RationalFunction.one_minus_t_power(2)
        / RationalFunction.one_minus_t_power(3)
        / RationalFunction.one_minus_t_power(4)
    )
    assert p == expected


def test_poincare_series_footnote_identity():
    # (1-t^2)(1-t^4)/prod = (1-t^8)/((1-t^2)(1-t^3)(1-t^4))
    #                       + t (1-t^3)(1-t^4)/((1-t^2)(1-t^3)(1-t^4))
    lhs = poincare_series(_an_presentation(3))
    den = (
        RationalFunction.one_minus_t_power(2)
        * RationalFunction.one_minus_t_power(3)
        * RationalFunction.one_minus_t_power(4)
    )
    t = RationalFunction([F(0), F(1)])
    rhs = RationalFunction.one_minus_t_power(8) / den + (
        RationalFunction.one_minus_t_power(3)
        * RationalFunction.one_minus_t_power(4)
    ) / den * t
    assert lhs == rhs


def test_poincare_series_zero_ideal():
    p = poincare_series(GradedIdealPresentation((1, 2, 3, 4), ()))
    expected = RationalFunction([F(1)])
    for w in (1, 2, 3, 4):
        expected = expected / RationalFunction.one_minus_t_power(w)
    assert p == expected


def test_poincare_bookkeeping_product():
    # adding a degree-r nonzerodivisor multiplies the series by (1 - t^r)
    base = GradedIdealPresentation((1, 2, 3, 4), (2,))
    bigger = GradedIdealPresentation((1, 2, 3, 4), (2, 5))
    assert poincare_series(bigger) == (
        poincare_series(base) * RationalFunction.one_minus_t_power(5)
    )


def test_degree_h0_values():
    for N in range(2, 7):
        assert degree_h0(_an_presentation(N)) == N * N - 1
        res_pres = GradedIdealPresentation((2, 3, 4), (N * N - 1,))
        assert degree_h0(res_pres) == N * N - 1
    assert degree_h0(GradedIdealPresentation((1, 2, 3, 4), ())) == 1


# ---------------------------------------------------------------------------
# kernel membership
# ---------------------------------------------------------------------------


def test_reduce_mod_ideal_basics():
    # modulo <A> every multiple of A dies, nothing else does
    red = reduce_mod_ideal(A * B + C, [A])
    assert red == C
    assert in_ideal(A * A * B - A * D, [A])
    assert not in_ideal(B * B, [A])


def test_phi_tilde_kernel_cp():
    for N in (2, 3, 4, 5):
        zero, _ = kernel_membership("phi_tilde_N", cp_model(N - 1), N)
        assert zero
    # and CP_N is not in the kernel
    for N in (2, 3):
        zero, red = kernel_membership("phi_tilde_N", cp_model(N), N)
        assert not zero and not red.is_zero()


def test_phi_tilde_kernel_twisted_cp():
    for N in (2, 3, 4):
        m = catalog(f"TwCP({N + 1},1)")
        zero, _ = kernel_membership("phi_tilde_N", m, N)
        assert zero


def test_phi_tilde_kernel_w5():
    zero, _ = kernel_membership("phi_tilde_N", catalog("W5"), 2)
    assert zero


def test_a_tilde_kernel():
    for N in (2, 3, 4):
        assert kernel_membership("a_tilde_N", catalog("W3"), N)[0]
        assert kernel_membership("a_tilde_N", cp_model(N - 1), N)[0]
        assert not kernel_membership("a_tilde_N", cp_model(N), N)[0]


# ---------------------------------------------------------------------------
# level-2 modular forms
# ---------------------------------------------------------------------------


def test_delta_expansion():
    delta, _ = level2_modular_forms(6)
    # 1/4 + 6 q + 6 q^2 + 24 q^3 + 6 q^4 + 36 q^5 + 24 q^6
    assert delta.coeff(0) == F(1, 4)
    assert [delta.coeff(n) for n in range(1, 7)] == [6, 6, 24, 6, 36, 24]


def test_epsilon_equals_theta4_power():
    # independent oracle: prod ((1-q^n)/(1+q^n))^8 = theta_4(q)^8 with
    # theta_4 = 1 + 2 sum (-1)^n q^{n^2} (Jacobi triple product)
    qorder = 12
    _, eps = level2_modular_forms(qorder)

    def theta4_coeff(e):
        for n in range(0, qorder + 1):
            if n * n == e:
                return F(2 * (-1) ** n) if n else F(1)
        return F(0)

    theta4 = TruncatedSeries.from_function(QQ, theta4_coeff, qorder)
    expected = (theta4 ** 8) * F(1, 16)
    assert eps == expected.truncate(eps.order)


def test_epsilon_cusp_value():
    delta, eps = level2_modular_forms(4)
    # at the cusp q = 0: epsilon = delta^2 (the signature relation)
    assert eps.coeff(0) == delta.coeff(0) ** 2
