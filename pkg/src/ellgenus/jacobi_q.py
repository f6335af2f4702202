"""q-expansion side of the elliptic genus: Jacobi-form products.

The building block is the entire function
Phi(tau, x) = (1 - u) prod_n (1 - q^n u)(1 - q^n / u)/(1 - q^n)^2 with
u = e^{-x}, q = e^{2 pi i tau}.  From its product form the characteristic
series of the genus acquires the expansion (with y = -e^z)

  Q(x) = x/(1-u) (1 + y u) prod_n [(1+y q^n u)/(1-q^n u)]
                               [(1+y^{-1} q^n/u)/(1-q^n/u)] / Phi(tau,-z),

valid on SU classes (an overall e^{kx} factor is dropped).  The module
expands these products exactly over two coefficient models for y —
rational functions of a formal y, or a cyclotomic quotient ring where
-y is a primitive N-th root of unity — and provides the loop-space
expansion chi_y(q, LX), the Weierstrass series, recovery of the quartic
coefficients q_1..q_4 as q-series, and the integrality check.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra_kernel import (
    QQ,
    QuotientRing,
    RationalFunction,
    TruncatedSeries,
    cyclotomic_polynomial,
)
from .cohomology_models import chern_vector
from .genus_engine import GenusSpec, evaluate
from .universal_elliptic import QuarticData, q_to_abcd

DEFAULT_QORDER = 5
DEFAULT_XORDER = 12


class NotSU(ValueError):
    pass


class InconsistentSystem(ArithmeticError):
    pass


class NotLaurent(ValueError):
    pass


# ---------------------------------------------------------------------------
# coefficient models for y
# ---------------------------------------------------------------------------


class FunctionField:
    """Ring context for rational functions in one formal variable y."""

    zero = RationalFunction([Fraction(0)])
    one = RationalFunction([Fraction(1)])

    @staticmethod
    def from_fraction(fr):
        return RationalFunction([Fraction(fr)])

    @staticmethod
    def gen():
        return RationalFunction([Fraction(0), Fraction(1)])

    def __repr__(self):
        return "Q(y)"


YF = FunctionField()


def y_model(mode):
    """(ring, y) for mode 'formal' or an integer N (cyclotomic).

    In cyclotomic mode -y is a primitive N-th root of unity: the modulus
    is the monic minimal polynomial of y, +-Phi_N(-y).
    """
    if mode == "formal":
        return YF, YF.gen()
    N = int(mode)
    phi = cyclotomic_polynomial(N)
    m = [c * Fraction((-1) ** i) for i, c in enumerate(phi)]
    ring = QuotientRing(m)
    return ring, ring.gen()


def as_y_laurent(value):
    """Rational function in y -> dict exponent -> Fraction.

    Requires the denominator to be a monomial c * y^k; raises NotLaurent
    otherwise.
    """
    if isinstance(value, (int, Fraction)):
        return {0: Fraction(value)} if value else {}
    num, den = value.num, value.den
    nz = [i for i, c in enumerate(den) if c != 0]
    if len(nz) != 1:
        raise NotLaurent(f"denominator is not a monomial: {value}")
    k = nz[0]
    c = den[k]
    return {e - k: v / c for e, v in enumerate(num) if v != 0}


class SeriesRing:
    """Ring context whose elements are q-truncated series over a base."""

    def __init__(self, base, qorder):
        self.base = base
        self.qorder = qorder
        self.zero = TruncatedSeries.zero_series(base, qorder)
        self.one = TruncatedSeries.one_series(base, qorder)

    def from_fraction(self, fr):
        return self.one * Fraction(fr)

    def constant(self, c):
        """Constant q-series with a base-ring value."""
        return TruncatedSeries(self.base, 0, [c], self.qorder)

    def from_function(self, fn):
        return TruncatedSeries.from_function(self.base, fn, self.qorder)

    def __eq__(self, other):
        return (
            isinstance(other, SeriesRing)
            and self.base == other.base
            and self.qorder == other.qorder
        )

    def __hash__(self):
        return hash(("SeriesRing", self.base, self.qorder))

    def __repr__(self):
        return f"{self.base!r}[[q]]/q^{self.qorder + 1}"


def xscale(xs, c):
    """Multiply an x-series by one nested coefficient (not an x-series)."""
    return TruncatedSeries(xs.ring, xs.low, [a * c for a in xs.coeffs],
                           xs.order)


# ---------------------------------------------------------------------------
# the Phi product
# ---------------------------------------------------------------------------


class UXSeries:
    """q-truncated series whose q^n coefficient is a u-Laurent polynomial.

    rows[n] maps the u-exponent to a coefficient (Fraction or y-ring
    element); exponents outside [-window, window] are dropped, which is
    sound as long as the window exceeds every u-power that can influence
    the retained range (the constructors choose it that way).
    """

    def __init__(self, qorder, rows, window):
        self.qorder = qorder
        self.window = window
        self.rows = [
            {e: c for e, c in row.items()
             if abs(e) <= window and not _zeroish(c)}
            for row in rows
        ]

    @classmethod
    def one(cls, qorder, window):
        return cls(qorder, [{0: Fraction(1)}] + [{} for _ in range(qorder)],
                   window)

    def __mul__(self, other):
        rows = [dict() for _ in range(self.qorder + 1)]
        for i, ra in enumerate(self.rows):
            for j, rb in enumerate(other.rows):
                if i + j > self.qorder:
                    break
                tgt = rows[i + j]
                for ea, ca in ra.items():
                    for eb, cb in rb.items():
                        e = ea + eb
                        if abs(e) > self.window:
                            continue
                        prev = tgt.get(e)
                        tgt[e] = ca * cb if prev is None else prev + ca * cb
        return UXSeries(self.qorder, rows, self.window)

    def scale_u(self, c):
        """Substitute u -> c * u (c a unit of the coefficient ring)."""
        rows = []
        for row in self.rows:
            rows.append({e: coeff * c ** e for e, coeff in row.items()})
        return UXSeries(self.qorder, rows, self.window)

    def shift_u_by_q(self):
        """Substitute u -> q u (x -> x + 2 pi i tau)."""
        rows = [dict() for _ in range(self.qorder + 1)]
        for n, row in enumerate(self.rows):
            for e, c in row.items():
                if 0 <= n + e <= self.qorder:
                    rows[n + e][e] = rows[n + e].get(e, Fraction(0)) + c
        return UXSeries(self.qorder, rows, self.window)

    def times_u_power(self, k):
        rows = [{e + k: c for e, c in row.items()} for row in self.rows]
        return UXSeries(self.qorder, rows, self.window)

    def scalar(self, c):
        return UXSeries(
            self.qorder,
            [{e: v * c for e, v in row.items()} for row in self.rows],
            self.window,
        )

    def eval_u(self, value, ring):
        """Substitute a ring value for u; returns a q-series over ring."""
        inv = value ** (-1) if any(
            e < 0 for row in self.rows for e in row
        ) else None
        coeffs = []
        for row in self.rows:
            total = ring.zero
            for e, c in row.items():
                term = ring.from_fraction(c) if isinstance(
                    c, (int, Fraction)) else c
                p = value ** e if e >= 0 else inv ** (-e)
                total = total + term * p
            coeffs.append(total)
        return TruncatedSeries(ring, 0, coeffs, self.qorder)

    def to_x_series(self, xorder, nested):
        """Expand u = e^{-x}; x-series over a SeriesRing."""
        coeffs = []
        for k in range(xorder + 1):
            inv_k = Fraction(1, factorial(k))

            def qc(n, k=k, inv_k=inv_k):
                total = nested.base.zero
                for e, c in self.rows[n].items():
                    w = Fraction((-e) ** k) * inv_k
                    term = c * w
                    if isinstance(term, (int, Fraction)):
                        term = nested.base.from_fraction(term)
                    total = total + term
                return total

            coeffs.append(nested.from_function(qc))
        return TruncatedSeries(nested, 0, coeffs, xorder)

    def __eq__(self, other):
        return (
            isinstance(other, UXSeries)
            and self.qorder == other.qorder
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"<UXSeries qorder={self.qorder} window={self.window}>"


def _zeroish(c):
    if isinstance(c, (int, Fraction)):
        return c == 0
    z = getattr(c, "is_zero", None)
    return z() if z is not None else False


def phi_product(qorder, uwindow=None):
    """Phi(tau, x) = (1-u) prod (1-q^n u)(1-q^n/u)/(1-q^n)^2, exactly."""
    if uwindow is None:
        uwindow = qorder + 2
    out = UXSeries(
        qorder,
        [{0: Fraction(1), 1: Fraction(-1)}] + [{} for _ in range(qorder)],
        uwindow,
    )
    # scalar factor prod (1-q^n)^{-2} = prod sum_m (m+1) q^{nm}
    scal = TruncatedSeries.one_series(QQ, qorder)
    for n in range(1, qorder + 1):
        rows = [dict() for _ in range(qorder + 1)]
        rows[0][0] = Fraction(1)
        rows[n][1] = Fraction(-1)
        out = out * UXSeries(qorder, rows, uwindow)
        rows = [dict() for _ in range(qorder + 1)]
        rows[0][0] = Fraction(1)
        rows[n][-1] = Fraction(-1)
        out = out * UXSeries(qorder, rows, uwindow)
        scal = scal * TruncatedSeries.from_function(
            QQ,
            lambda e, n=n: Fraction(e // n + 1) if e % n == 0 else Fraction(0),
            qorder,
        )
    rows = [dict() for _ in range(qorder + 1)]
    for n in range(qorder + 1):
        c = scal.coeff(n)
        if c:
            rows[n][0] = c
    return out * UXSeries(qorder, rows, uwindow)


def phi_at_minus_z(qorder, ring, y):
    """Phi(tau, -z) = (1+y) prod (1+y q^n)(1+y^{-1} q^n)/(1-q^n)^2."""
    y_inv = y ** (-1)
    out = TruncatedSeries(ring, 0, [ring.one + y], qorder)
    for n in range(1, qorder + 1):
        f1 = TruncatedSeries.from_function(
            ring,
            lambda e, n=n: ring.one if e == 0 else
            (y if e == n else ring.zero),
            qorder,
        )
        f2 = TruncatedSeries.from_function(
            ring,
            lambda e, n=n: ring.one if e == 0 else
            (y_inv if e == n else ring.zero),
            qorder,
        )
        geom2 = TruncatedSeries.from_function(
            ring,
            lambda e, n=n: ring.from_fraction(e // n + 1) if e % n == 0
            else ring.zero,
            qorder,
        )
        out = out * f1 * f2 * geom2
    return out


# ---------------------------------------------------------------------------
# the product form of the characteristic series
# ---------------------------------------------------------------------------


def qx_of_phiell_product(qorder=DEFAULT_QORDER, xorder=DEFAULT_XORDER,
                         mode="formal"):
    """The genus's Q(x) with q-series coefficients, from the product form.

    mode: "formal" (coefficients rational functions of y) or an integer N
    (coefficients in the cyclotomic model where -y is a primitive N-th
    root of unity).  The overall e^{kx} factor is dropped, so evaluation
    is only meaningful on SU classes.
    """
    ring, y = y_model(mode)
    nested = SeriesRing(ring, qorder)
    y_inv = y ** (-1)

    # x/(1 - e^{-x}), lifted
    x = TruncatedSeries.x_series(QQ, xorder + 1)
    denom = (TruncatedSeries.one_series(QQ, xorder + 1) - (-x).exp())
    todd = (x * denom.inverse()).truncate(xorder)
    q_of_x = TruncatedSeries(
        nested, 0, [nested.from_fraction(todd.coeff(k))
                    for k in range(xorder + 1)], xorder
    )

    # (1 + y e^{-x})
    fac = TruncatedSeries(
        nested, 0,
        [nested.constant(ring.one + y)] + [
            nested.constant(y * Fraction((-1) ** k, factorial(k)))
            for k in range(1, xorder + 1)
        ],
        xorder,
    )
    q_of_x = q_of_x * fac

    one_plus_y = ring.one + y
    one_plus_yinv = ring.one + y_inv
    for n in range(1, qorder + 1):
        for sign, unit in ((1, one_plus_y), (-1, one_plus_yinv)):
            # 1 + unit * sum_{m>=1} q^{nm} u^{sign*m}
            coeffs = []
            for k in range(xorder + 1):
                def qc(e, k=k, n=n, sign=sign, unit=unit):
                    if e == 0 or e % n:
                        return ring.zero
                    m = e // n
                    w = Fraction((sign * -m) ** k, factorial(k))
                    return unit * w

                col = nested.from_function(qc)
                if k == 0:
                    col = col + nested.one
                coeffs.append(col)
            q_of_x = q_of_x * TruncatedSeries(nested, 0, coeffs, xorder)

    norm_inv = phi_at_minus_z(qorder, ring, y).inverse()
    q_of_x = xscale(q_of_x, norm_inv)
    return GenusSpec(q_of_x, name=f"phi_ell(q; {mode})")


# ---------------------------------------------------------------------------
# loop-space expansion and the Weierstrass series
# ---------------------------------------------------------------------------

_spec_cache = {}


def _product_spec(qorder, xorder, mode):
    # a spec of higher x-order answers every lower-order request
    key = (qorder, mode)
    spec = _spec_cache.get(key)
    if spec is None or spec.order < xorder:
        spec = qx_of_phiell_product(qorder, xorder, mode)
        _spec_cache[key] = spec
    return spec


def chi_y_loop(X, qorder=DEFAULT_QORDER):
    """chi_y(q, LX) = phi_ell(X) * Phi(tau,-z)^dim as a q-series in y.

    X must be an SU class (all Chern numbers containing c_1 vanish).
    """
    cv = chern_vector(X)
    if not cv.is_su():
        raise NotSU("chi_y(q, LX) needs an SU class")
    spec = _product_spec(qorder, max(cv.dim, 2), "formal")
    v = evaluate(spec, cv)
    ring, y = y_model("formal")
    norm = phi_at_minus_z(qorder, ring, y)
    return v * norm ** cv.dim


def weierstrass_p(qorder=DEFAULT_QORDER):
    """The Weierstrass series: -y/(1+y)^2
    + sum_n q^n sum_{d|n} d((-y)^d + (-y)^{-d}) + (1/12)(1 - 24 sum sigma_1 q^n)."""
    ring, y = y_model("formal")
    minus_y = -y
    minus_y_inv = minus_y ** (-1)

    def coeff(n):
        if n == 0:
            return (
                -y * (ring.one + y) ** (-2) + ring.from_fraction(Fraction(1, 12))
            )
        total = ring.zero
        s1 = 0
        for d in range(1, n + 1):
            if n % d == 0:
                total = total + (minus_y ** d + minus_y_inv ** d) * d
                s1 += d
        return total - Fraction(2 * s1)

    return TruncatedSeries(ring, 0, [coeff(n) for n in range(qorder + 1)],
                           qorder)


def weierstrass_p_prime(qorder=DEFAULT_QORDER):
    """d/dz of the Weierstrass series (z-derivative acts as y d/dy)."""
    ring, y = y_model("formal")
    minus_y = -y
    minus_y_inv = minus_y ** (-1)

    def coeff(n):
        if n == 0:
            return y * (y - ring.one) * (ring.one + y) ** (-3)
        total = ring.zero
        for d in range(1, n + 1):
            if n % d == 0:
                total = total + (minus_y ** d - minus_y_inv ** d) * (d * d)
        return total

    return TruncatedSeries(ring, 0, [coeff(n) for n in range(qorder + 1)],
                           qorder)


# ---------------------------------------------------------------------------
# recovering the quartic coefficients
# ---------------------------------------------------------------------------


def match_quartic(f):
    """q_1..q_4 with (h')^2 = h^4 + q_1 h^3 + ... for h = f'/f.

    The coefficients of (h')^2 - h^4 at x^{-3}..x^0 determine q_1..q_4
    sequentially; the remaining Laurent coefficients must then vanish,
    which is checked — raises InconsistentSystem if the genus with this
    f does not satisfy a quartic differential equation.
    """
    ring = f.ring
    h = (f.derivative() * f.inverse()).truncate(f.order - 3)
    hp = h.derivative()
    h2 = h * h
    h3 = h2 * h
    h4 = h2 * h2
    rem = (hp * hp - h4).truncate(h4.order)
    powers = {3: h3.truncate(rem.order), 2: h2.truncate(rem.order),
              1: h.truncate(rem.order)}
    qs = []
    for pw in (3, 2, 1, 0):
        c = rem.coeff(-pw)
        qs.append(c)
        if pw:
            rem = rem - xscale(powers[pw], c)
        else:
            rem = rem - TruncatedSeries(ring, 0, [c], rem.order)
    for e in range(rem.low, rem.order + 1):
        if not _zeroish(rem.coeff(e)):
            raise InconsistentSystem(
                f"quartic does not close at x^{e}: {rem.coeff(e)}"
            )
    return QuarticData(*qs, ring=ring)


def extract_qi(mode="formal", qorder=DEFAULT_QORDER, xorder=DEFAULT_XORDER):
    """The q-expansions of q_1..q_4 (and of A, B, C, D).

    Returns (QuarticData, ABCDPoint) over the q-series ring, recovered
    from the product form of f via its quartic differential equation.
    """
    spec = _product_spec(qorder, xorder, mode)
    quartic = match_quartic(spec.f_series())
    return quartic, q_to_abcd(quartic)


# ---------------------------------------------------------------------------
# integrality
# ---------------------------------------------------------------------------


def integrality_check(series):
    """Is every coefficient in Z[y, y^{-1}]?  Returns (ok, violation).

    violation is None or (q-power, y-exponent, value).
    """
    for n in range(series.low, series.order + 1):
        lau = as_y_laurent(series.coeff(n))
        for e, c in sorted(lau.items()):
            if c.denominator != 1:
                return False, (n, e, c)
    return True, None
