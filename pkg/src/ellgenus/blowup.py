"""Blow-up behavior of genera.

For a blow-up X~ -> X along a center Y of codimension q, the change of
the genus is supported on Y: with Q the characteristic series, x_i the
Chern roots of the normal bundle, and v = x_1,

    phi(X~) - phi(X)
        = K_phi(TY) . g_* ( (Q(v)/v) prod_i Q(x_i - v)
                            - (1/v) prod_i Q(x_i) ) [Y],

where g_* is the pushforward from the full flag bundle of the normal
bundle, computed as antisymmetrization divided by the Vandermonde.  No
model of the blown-up space is ever built.  The module also verifies the
two residue identities behind level-N invariance: the rational identity
sum_i prod_{j != i} x_j/(x_j - x_i) = 1, and its elliptic analogue for
the level-N series when q = 1 mod N.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra_kernel import MultiPoly, QQ, TruncatedSeries
from .cohomology_models import cp_model, point_model
from .genus_engine import multiplicative_class
from .jacobi_q import _product_spec


class DegenerateSample(ValueError):
    pass


class TruncationTooLow(ValueError):
    pass


class BlowupInput:
    """Center model, normal-bundle Chern roots, and the genus to apply.

    roots are degree-1 (complex degree) elements of the center's model;
    their number is the codimension q of the center.
    """

    def __init__(self, center, roots, spec):
        if not roots:
            raise ValueError("codimension must be >= 1")
        for r in roots:
            for label in r:
                if center.degree[label] != 1:
                    raise ValueError("normal-bundle roots must have degree 1")
        self.center = center
        self.roots = list(roots)
        self.spec = spec

    @property
    def codim(self):
        return len(self.roots)


# ---------------------------------------------------------------------------
# flag-bundle pushforward
# ---------------------------------------------------------------------------


def vandermonde(ring, q, lowest=0, cap=None):
    """prod_{i > j >= lowest} (x_i - x_j) as a MultiPoly in q variables."""
    out = MultiPoly.const(ring, q, ring.one, cap)
    for i in range(lowest, q):
        for j in range(lowest, i):
            xi = MultiPoly.gen(ring, q, i, cap)
            xj = MultiPoly.gen(ring, q, j, cap)
            out = out * (xi - xj)
    return out


def flag_pushforward(t, q):
    """Pushforward from the full flag bundle of a rank-q bundle.

    g_*(t) = [sum_sigma sign(sigma) sigma(t)] / prod_{i>j} (x_i - x_j);
    the division is exact polynomial division (the quotient is the
    symmetric pushforward), checked term by term.
    """
    out = t.antisymmetrize()
    for i in range(q):
        for j in range(i):
            out = out.divide_linear(i, j)
    return out


def symmetric_to_elementary(sym):
    """Symmetric MultiPoly -> dict {(m_1..m_q): coeff} over e_1..e_q.

    Gauss reduction on the lex-leading monomial; each leading exponent
    vector of a symmetric polynomial is a partition lambda, killed by
    c * e_1^{l1-l2} e_2^{l2-l3} ... e_q^{lq}.
    """
    ring = sym.ring
    q = sym.nvars
    elems = [_elementary(ring, q, k) for k in range(1, q + 1)]
    work = MultiPoly(ring, q, dict(sym.terms), None)
    out = {}
    while work.terms:
        lam = max(work.terms)  # lex order; leading exponent is a partition
        c = work.terms[lam]
        if list(lam) != sorted(lam, reverse=True):
            raise ValueError("polynomial is not symmetric")
        expo = [lam[k] - (lam[k + 1] if k + 1 < q else 0) for k in range(q)]
        mono = MultiPoly.const(ring, q, ring.one, None)
        for k, m in enumerate(expo):
            if m:
                mono = mono * elems[k] ** m
        out[tuple(expo)] = out.get(tuple(expo), ring.zero) + c
        work = work - mono * c
    return {e: c for e, c in out.items() if not (c == ring.zero)}


def _elementary(ring, q, k):
    from itertools import combinations

    terms = {}
    for sub in combinations(range(q), k):
        e = tuple(1 if i in sub else 0 for i in range(q))
        terms[e] = ring.one
    return MultiPoly(ring, q, terms, None)


# ---------------------------------------------------------------------------
# the defect formula
# ---------------------------------------------------------------------------


def _series_poly(coeffs, arg, ring, q, cap):
    """sum_k coeffs[k] arg^k as a MultiPoly (Horner)."""
    out = MultiPoly.zero(ring, q, cap)
    for k in range(len(coeffs) - 1, -1, -1):
        out = out * arg + MultiPoly.const(ring, q, coeffs[k], cap)
    return out


def _divide_by_var(p, i):
    """Exact division by x_i; every term must contain x_i."""
    terms = {}
    for e, c in p.terms.items():
        if e[i] < 1:
            raise ArithmeticError("expression not divisible by the root")
        ne = list(e)
        ne[i] -= 1
        terms[tuple(ne)] = c
    cap = None if p.cap is None else p.cap - 1
    return MultiPoly(p.ring, p.nvars, terms, cap)


def genus_defect(inp):
    """phi(blow-up of X along the center) - phi(X), computed over the center."""
    model = inp.center
    q = inp.codim
    spec = inp.spec
    cap = model.dim + q * (q - 1) // 2 + 1
    if spec.order < cap:
        raise TruncationTooLow(
            f"genus truncation {spec.order} < required {cap}"
        )
    ring = spec.ring
    qc = [spec.q.coeff(k) for k in range(cap + 1)]
    xs = [MultiPoly.gen(ring, q, i, cap) for i in range(q)]

    def Q(arg):
        return _series_poly(qc, arg, ring, q, cap)

    v = xs[0]
    first = Q(v)
    for xi in xs[1:]:
        first = first * Q(xi - v)
    second = MultiPoly.const(ring, q, ring.one, cap)
    for xi in xs:
        second = second * Q(xi)
    t = _divide_by_var(first - second, 0)
    # t lives on the exceptional projective bundle (v = x_1); lift to the
    # flag bundle by multiplying with the sub-Vandermonde in x_2..x_q,
    # whose fiberwise pushforward is (q-1)!
    sub = vandermonde(ring, q, lowest=1, cap=t.cap)
    pushed = flag_pushforward(t * sub, q) * Fraction(1, factorial(q - 1))
    edict = symmetric_to_elementary(pushed)

    # elementary symmetric functions of the normal-bundle roots
    e_classes = [model.one_elt()]
    for r in inp.roots:
        new = [e_classes[0]]
        for k in range(1, len(e_classes) + 1):
            prev = e_classes[k] if k < len(e_classes) else model.zero_elt()
            new.append(model.add(prev, model.mul(e_classes[k - 1], r)))
        e_classes = new

    total = model.zero_elt()
    for expo, c in edict.items():
        term = model.one_elt()
        for k, m in enumerate(expo):
            for _ in range(m):
                term = model.mul(term, e_classes[k + 1])
        total = model.add(total, model.scale(term, c))

    kclass = multiplicative_class(spec, model)
    value = model.integrate(model.mul(kclass, total))
    if isinstance(value, (int, Fraction)):  # empty integrand
        value = ring.from_fraction(Fraction(value))
    return value


# ---------------------------------------------------------------------------
# the residue identities
# ---------------------------------------------------------------------------


def verify_rational_identity(q, samples):
    """sum_i prod_{j != i} x_j / (x_j - x_i) == 1 for distinct samples."""
    xs = [Fraction(s) for s in samples]
    if len(xs) != q:
        raise DegenerateSample("need exactly q sample points")
    if len(set(xs)) != q:
        raise DegenerateSample("sample points must be pairwise distinct")
    total = Fraction(0)
    for i in range(q):
        prod = Fraction(1)
        for j in range(q):
            if j != i:
                prod *= xs[j] / (xs[j] - xs[i])
        total += prod
    return total == 1


def verify_elliptic_identity(N, q, qorder=2, xorder=4):
    """The elliptic residue identity for the level-N series.

    Checks, as an identity of truncated polynomials in formal x_1..x_q
    with level-N q-series coefficients, that

        sum_i (1/f(x_i)) prod_{j != i} 1/f(x_j - x_i)
            - prod_i 1/f(x_i) = 0.

    Poles are cleared with 1/f(x) = Q(x)/x and the common denominator
    prod_i x_i * prod_{i<j} (x_j - x_i), turning both sides into honest
    polynomials.  Returns (holds, witness); witness is None or the first
    nonzero term (exponents, q-power, value) — the identity genuinely
    fails when q is not 1 mod N, so the hypothesis is reported, not
    assumed.
    """
    cap = q + q * (q - 1) // 2 + xorder - 1
    spec = _product_spec(qorder, cap, N)
    ring = spec.ring
    qc = [spec.q.coeff(k) for k in range(cap + 1)]
    xs = [MultiPoly.gen(ring, q, i, cap) for i in range(q)]

    def Q(arg):
        return _series_poly(qc, arg, ring, q, cap)

    total = MultiPoly.zero(ring, q, cap)
    for i in range(q):
        term = Q(xs[i])
        for j in range(q):
            if j == i:
                continue
            term = term * Q(xs[j] - xs[i]) * xs[j]
        # reassemble prod_{j != i}(x_j - x_i) into ordered pair factors
        for k in range(q):
            for l in range(k + 1, q):
                if k != i and l != i:
                    term = term * (xs[l] - xs[k])
        if i % 2:
            term = -term
        total = total + term
    last = MultiPoly.const(ring, q, ring.one, cap)
    for xi in xs:
        last = last * Q(xi)
    for k in range(q):
        for l in range(k + 1, q):
            last = last * (xs[l] - xs[k])
    total = total - last

    witness = None
    for e in sorted(total.terms, key=lambda t: (sum(t), t)):
        c = total.terms[e]
        for n in range(c.low, c.order + 1):
            if not _coeff_is_zero(c.coeff(n)):
                witness = (e, n, c.coeff(n))
                break
        if witness:
            break
    return witness is None, witness


def _coeff_is_zero(c):
    if isinstance(c, (int, Fraction)):
        return c == 0
    z = getattr(c, "is_zero", None)
    return z() if z is not None else c == 0


# ---------------------------------------------------------------------------
# level-N invariance report
# ---------------------------------------------------------------------------


def _cp1_in_cp4_input(spec):
    """A line in CP4: normal bundle O(1)^3 over CP1."""
    m = cp_model(1)
    g = m.scale(m.chern_class(1), Fraction(1, 2))
    return BlowupInput(m, [g, g, g], spec)


def _cp2_in_cp4_input(spec):
    """A plane in CP4: normal bundle O(1)^2 over CP2."""
    m = cp_model(2)
    g = m.scale(m.chern_class(1), Fraction(1, 3))
    return BlowupInput(m, [g, g], spec)


def _point_input(spec, q):
    m = point_model()
    zero = m.zero_elt()
    return BlowupInput(m, [zero] * q, spec)


def default_cases(N):
    """(label, input-builder, codim, center dim, hypothesis-met)."""
    if N == 2:
        return [
            ("point center, codim 3",
             lambda s: _point_input(s, 3), 3, 0, True),
            ("CP1 center in CP4, codim 3", _cp1_in_cp4_input, 3, 1, True),
            ("CP2 center in CP4, codim 2 (violates codim = 1 mod N)",
             _cp2_in_cp4_input, 2, 2, False),
        ]
    return [
        (f"point center, codim {N + 1}",
         lambda s: _point_input(s, N + 1), N + 1, 0, True),
    ]


def verify_blowup_invariance(N, examples=None, qorder=2):
    """Defect of the level-N q-series genus on blow-up centers.

    examples: list of (label, input-builder, codim, center dim,
    expect_zero); defaults cover codim = 1 mod N cases plus a
    violated-hypothesis negative control.  Each report entry carries the
    first nonzero q-coefficient as a witness when the defect does not
    vanish.
    """
    cases = examples if examples is not None else default_cases(N)
    report = []
    for label, build, q, dim, expect_zero in cases:
        cap = dim + q * (q - 1) // 2 + 1
        spec = _product_spec(qorder, max(cap, 4), N)
        defect = genus_defect(build(spec))
        is_zero = defect.is_zero()
        witness = None
        if not is_zero:
            for n in range(defect.low, defect.order + 1):
                if not _coeff_is_zero(defect.coeff(n)):
                    witness = (n, repr(defect.coeff(n)))
                    break
        report.append({
            "level": N,
            "case": label,
            "codim": q,
            "hypothesis_met": expect_zero,
            "defect_zero": is_zero,
            "ok": is_zero == expect_zero,
            "witness": witness,
        })
    return report
