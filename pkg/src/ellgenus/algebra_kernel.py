"""Exact arithmetic foundation.

Rationals (stdlib Fraction), weighted multivariate polynomials over Q,
truncated uni- and multivariate series over generic exact coefficient rings,
univariate quotient rings Q[y]/(m), and rational functions in one variable.

Everything here is immutable after construction and all operations are pure,
so values can be shared freely.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations


class NonUnitLeadingCoefficient(ArithmeticError):
    pass


class BadValuation(ValueError):
    pass


class VariableNotPresent(KeyError):
    pass


class ExactDivisionError(ArithmeticError):
    pass


def _fr(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected rational, got {x!r}")


# ---------------------------------------------------------------------------
# coefficient ring contexts
#
# A "ring context" is any object with attributes/methods
#     zero, one, from_fraction(fr)
# whose elements support +, -, unary -, *, == and multiplication by Fraction.
# Fraction itself is the base case.
# ---------------------------------------------------------------------------


class FractionRing:
    """Ring context for plain rational coefficients."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_fraction(fr):
        return _fr(fr)

    def __repr__(self):
        return "QQ"


QQ = FractionRing()


def ring_invert(c):
    """Multiplicative inverse of a coefficient, if it is a unit."""
    if isinstance(c, Fraction):
        if c == 0:
            raise NonUnitLeadingCoefficient("division by zero coefficient")
        return 1 / c
    inv = getattr(c, "inverse", None)
    if inv is None:
        raise NonUnitLeadingCoefficient(f"cannot invert {c!r}")
    try:
        return inv()
    except NonUnitLeadingCoefficient:
        raise
    except ArithmeticError as exc:
        raise NonUnitLeadingCoefficient(str(exc)) from exc


# ---------------------------------------------------------------------------
# weighted multivariate polynomials over Q
# ---------------------------------------------------------------------------


class PolyRing:
    """Q[x_1, ..., x_k] with a positive integer weight per variable.

    Variables are ordered; the first variable is largest in the graded
    lexicographic term order used for display and leading terms.
    """

    def __init__(self, *variables):
        spec = []
        for v in variables:
            if isinstance(v, str):
                spec.append((v, 1))
            else:
                name, w = v
                w = int(w)
                if w <= 0:
                    raise ValueError("variable weights must be positive")
                spec.append((str(name), w))
        self.variables = tuple(spec)
        self.names = tuple(n for n, _ in spec)
        self.weights = tuple(w for _, w in spec)
        self.nvars = len(spec)
        if len(set(self.names)) != self.nvars:
            raise ValueError("duplicate variable names")
        self.zero = WeightedPoly(self, {})
        self.one = WeightedPoly(self, {(0,) * self.nvars: Fraction(1)})

    def gen(self, name):
        i = self.names.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return WeightedPoly(self, {exps: Fraction(1)})

    def gens(self):
        return tuple(self.gen(n) for n in self.names)

    def from_fraction(self, fr):
        fr = _fr(fr)
        if fr == 0:
            return self.zero
        return WeightedPoly(self, {(0,) * self.nvars: fr})

    def monomial(self, exps, coeff=1):
        coeff = _fr(coeff)
        if coeff == 0:
            return self.zero
        return WeightedPoly(self, {tuple(exps): coeff})

    def monomials_of_weight(self, w):
        """All exponent tuples of total weight exactly w."""
        out = []

        def rec(i, rem, acc):
            if i == self.nvars:
                if rem == 0:
                    out.append(tuple(acc))
                return
            wi = self.weights[i]
            for e in range(rem // wi + 1):
                rec(i + 1, rem - e * wi, acc + [e])

        rec(0, w, [])
        return out

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return "Q[%s]" % ", ".join(
            n if w == 1 else f"{n}(w={w})" for n, w in self.variables
        )


class WeightedPoly:
    """Element of a PolyRing; terms map exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- basic structure ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def term_weight(self, exps):
        return sum(e * w for e, w in zip(exps, self.ring.weights))

    def weight(self):
        """Weight if homogeneous, else None.  Zero returns None as well
        (it is homogeneous of every weight)."""
        ws = {self.term_weight(e) for e in self.terms}
        if len(ws) == 1:
            return ws.pop()
        return None

    def is_homogeneous(self, w=None):
        ws = {self.term_weight(e) for e in self.terms}
        if not ws:
            return True
        if w is None:
            return len(ws) == 1
        return ws == {w}

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, WeightedPoly):
            if other.ring != self.ring:
                raise ValueError("mixed polynomial rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.from_fraction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return WeightedPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeightedPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = _fr(other)
            return WeightedPoly(self.ring, {e: c * f for e, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return WeightedPoly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _fr(other))
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def inverse(self):
        """Inverse of a unit (nonzero constant) polynomial."""
        if len(self.terms) == 1:
            c = self.constant_term()
            if c != 0:
                return self.ring.from_fraction(1 / c)
        raise NonUnitLeadingCoefficient("polynomial is not a unit")

    # -- term order / display ----------------------------------------------

    def _grlex_key(self, exps):
        # graded lex: higher weight first, then lex with variable 0 largest
        return (self.term_weight(exps), exps)

    def leading(self):
        """(exps, coeff) of the graded-lex leading term; None for zero."""
        if not self.terms:
            return None
        e = max(self.terms, key=self._grlex_key)
        return e, self.terms[e]

    def monic(self):
        """Scale so the graded-lex leading coefficient is 1."""
        lt = self.leading()
        if lt is None:
            return self
        return self * (Fraction(1) / lt[1])

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=self._grlex_key, reverse=True):
            c = self.terms[e]
            mon = "*".join(
                n if k == 1 else f"{n}^{k}"
                for n, k in zip(self.ring.names, e)
                if k
            )
            if not mon:
                parts.append((c, str(abs(c))))
                continue
            ac = abs(c)
            if ac == 1:
                parts.append((c, mon))
            else:
                parts.append((c, f"{ac}*{mon}"))
        out = ""
        for i, (c, txt) in enumerate(parts):
            if i == 0:
                out = ("-" if c < 0 else "") + txt
            else:
                out += (" - " if c < 0 else " + ") + txt
        return out

    __repr__ = __str__

    # -- substitution -------------------------------------------------------

    def substitute(self, mapping, ring=QQ):
        """Evaluate with variables replaced by elements of a target ring.

        mapping: dict name -> target-ring element (or Fraction/int).
        Every variable that actually appears must be mapped.
        """
        images = []
        for i, name in enumerate(self.ring.names):
            if name in mapping:
                v = mapping[name]
                if isinstance(v, (int, Fraction)):
                    v = ring.from_fraction(v)
                images.append(v)
            else:
                if any(e[i] for e in self.terms):
                    raise VariableNotPresent(f"no image for variable {name}")
                images.append(None)
        result = ring.zero
        for exps, c in self.terms.items():
            term = ring.from_fraction(c)
            for img, k in zip(images, exps):
                for _ in range(k):
                    term = term * img
            result = result + term
        return result

    def rename(self, ring, name_map=None):
        """Transport into another PolyRing, optionally renaming variables."""
        name_map = name_map or {}
        mapping = {
            n: ring.gen(name_map.get(n, n))
            for n in self.ring.names
        }
        return self.substitute(mapping, ring)

    # -- univariate views ---------------------------------------------------

    def degree_in(self, name):
        i = self.ring.names.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def as_univariate(self, name):
        """dict exponent-of-name -> WeightedPoly not involving name."""
        i = self.ring.names.index(name)
        out = {}
        for exps, c in self.terms.items():
            k = exps[i]
            rest = exps[:i] + (0,) + exps[i + 1:]
            p = out.setdefault(k, {})
            p[rest] = p.get(rest, Fraction(0)) + c
        return {k: WeightedPoly(self.ring, t) for k, t in out.items()}

    # -- exact division (integral domain) -----------------------------------

    def exact_div(self, other):
        """Exact quotient self/other; raises ExactDivisionError otherwise."""
        o = self._coerce(other)
        if o is None or o.is_zero():
            raise ExactDivisionError("division by zero polynomial")
        lt = o.leading()
        le, lc = lt
        rem = self
        qterms = {}
        while not rem.is_zero():
            re, rc = rem.leading()
            qe = tuple(a - b for a, b in zip(re, le))
            if any(k < 0 for k in qe):
                raise ExactDivisionError("not exactly divisible")
            qc = rc / lc
            qterms[qe] = qterms.get(qe, Fraction(0)) + qc
            rem = rem - WeightedPoly(self.ring, {qe: qc}) * o
        return WeightedPoly(self.ring, qterms)


# ---------------------------------------------------------------------------
# fraction-free determinant and Sylvester resultant
# ---------------------------------------------------------------------------


def _entry_exact_div(a, b):
    if isinstance(a, Fraction) or isinstance(a, int):
        return _fr(a) / _fr(b)
    return a.exact_div(b)


def bareiss_determinant(rows, zero, one):
    """Fraction-free (Bareiss) determinant over an integral domain.

    rows: square list-of-lists; entries support *, -, exact division.
    """
    n = len(rows)
    if n == 0:
        return one
    m = [list(r) for r in rows]
    sign = 1
    prev = one
    for k in range(n - 1):
        if m[k][k] == zero:
            piv = next((i for i in range(k + 1, n) if m[i][k] != zero), None)
            if piv is None:
                return zero
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = _entry_exact_div(num, prev)
            m[i][k] = zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant_in(p, q, var):
    """Sylvester resultant of p and q with respect to one variable.

    Both inputs live in the same PolyRing; the result does not involve var.
    """
    if not isinstance(p, WeightedPoly) or not isinstance(q, WeightedPoly):
        raise TypeError("resultant_in expects WeightedPoly inputs")
    ring = p.ring
    if var not in ring.names:
        raise VariableNotPresent(var)
    pu = p.as_univariate(var)
    qu = q.as_univariate(var)
    m = max(pu, default=-1)
    n = max(qu, default=-1)
    if m < 1 and n < 1:
        raise VariableNotPresent(f"{var} appears in neither argument")
    if m < 0 or n < 0:
        raise ExactDivisionError("resultant with the zero polynomial")
    pc = [pu.get(k, ring.zero) for k in range(m, -1, -1)]
    qc = [qu.get(k, ring.zero) for k in range(n, -1, -1)]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([ring.zero] * i + pc + [ring.zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([ring.zero] * i + qc + [ring.zero] * (size - i - n - 1))
    return bareiss_determinant(rows, ring.zero, ring.one)


# ---------------------------------------------------------------------------
# exact linear algebra over Q (used for graded ideal membership)
# ---------------------------------------------------------------------------


def solve_linear(rows, rhs):
    """Solve A x = b exactly over Q; returns one solution or None.

    rows: list of rows of A (Fractions); rhs: list of Fractions.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[_fr(v) for v in row] + [_fr(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = a[i][n]
    return x


# ---------------------------------------------------------------------------
# truncated series in one variable, generic coefficients
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """Laurent/power series known exactly for exponents low..order.

    Coefficients live in an arbitrary ring context (see module docstring).
    Binary operations keep only the provably correct range (minimum rule).
    """

    __slots__ = ("ring", "low", "coeffs", "order")

    def __init__(self, ring, low, coeffs, order=None):
        if order is None:
            order = low + len(coeffs) - 1
        length = order - low + 1
        if length < 0:
            raise ValueError("empty coefficient window")
        cs = list(coeffs[:length])
        cs += [ring.zero] * (length - len(cs))
        self.ring = ring
        self.low = low
        self.coeffs = cs
        self.order = order

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero_series(cls, ring, order, low=0):
        return cls(ring, low, [], order)

    @classmethod
    def one_series(cls, ring, order):
        return cls(ring, 0, [ring.one], order)

    @classmethod
    def x_series(cls, ring, order):
        return cls(ring, 1, [ring.one], order)

    @classmethod
    def from_function(cls, ring, fn, order, low=0):
        """Coefficients fn(e) for low <= e <= order."""
        return cls(ring, low, [fn(e) for e in range(low, order + 1)], order)

    # -- access -------------------------------------------------------------

    def coeff(self, e):
        if e < self.low:
            return self.ring.zero
        if e > self.order:
            raise IndexError(f"coefficient x^{e} beyond truncation {self.order}")
        return self.coeffs[e - self.low]

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c != self.ring.zero:
                return self.low + i
        return None

    def is_zero(self):
        return self.valuation() is None

    def truncate(self, order):
        if order >= self.order:
            return self
        return TruncatedSeries(self.ring, self.low, self.coeffs, order)

    def shift(self, k):
        """Multiply by x^k."""
        return TruncatedSeries(self.ring, self.low + k, self.coeffs, self.order + k)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(
                self.ring, 0, [self.ring.from_fraction(other)], self.order
            )
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        low = min(self.low, o.low)
        order = min(self.order, o.order)
        cs = []
        for e in range(low, order + 1):
            a = self.coeffs[e - self.low] if self.low <= e <= self.order else self.ring.zero
            b = o.coeffs[e - o.low] if o.low <= e <= o.order else self.ring.zero
            cs.append(a + b)
        return TruncatedSeries(self.ring, low, cs, order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ring, self.low, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            # product provably correct to min(o1 + low2, o2 + low1)
            low = self.low + other.low
            order = min(self.order + other.low, other.order + self.low)
            cs = [self.ring.zero] * (order - low + 1)
            for i, a in enumerate(self.coeffs):
                if a == self.ring.zero:
                    continue
                ea = self.low + i
                for j, b in enumerate(other.coeffs):
                    e = ea + other.low + j
                    if e > order:
                        break
                    if b == self.ring.zero:
                        continue
                    cs[e - low] = cs[e - low] + a * b
            return TruncatedSeries(self.ring, low, cs, order)
        if isinstance(other, (int, Fraction)):
            f = _fr(other)
            return TruncatedSeries(
                self.ring, self.low, [c * f for c in self.coeffs], self.order
            )
        # scalar from the coefficient ring
        return TruncatedSeries(
            self.ring, self.low, [c * other for c in self.coeffs], self.order
        )

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.one_series(self.ring, self.order - self.low * 0)
        result = result.truncate(self.order)
        base = self
        first = True
        while n:
            if n & 1:
                result = base if first else result * base
                first = False
            n >>= 1
            if n:
                base = base * base
        if first:
            return TruncatedSeries.one_series(self.ring, self.order)
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        low = min(self.low, o.low)
        for e in range(low, order + 1):
            a = self.coeffs[e - self.low] if self.low <= e <= self.order else self.ring.zero
            b = o.coeffs[e - o.low] if o.low <= e <= o.order else self.ring.zero
            if not (a == b):
                return False
        return True

    # -- series operations --------------------------------------------------

    def inverse(self):
        v = self.valuation()
        if v is None:
            raise NonUnitLeadingCoefficient("inverse of zero series")
        n = self.order - v
        a = [self.coeff(v + k) for k in range(n + 1)]
        b0 = ring_invert(a[0])
        b = [b0]
        for k in range(1, n + 1):
            s = self.ring.zero
            for i in range(1, k + 1):
                s = s + a[i] * b[k - i]
            b.append(-(b0 * s))
        return TruncatedSeries(self.ring, -v, b, -v + n)

    def derivative(self):
        out = []
        for i, c in enumerate(self.coeffs):
            e = self.low + i
            out.append(c * Fraction(e) if e != 0 else self.ring.zero)
        return TruncatedSeries(self.ring, self.low - 1, out, self.order - 1)

    def integrate(self):
        """Antiderivative with zero constant term; requires no x^{-1} term."""
        if self.low <= -1 <= self.order and self.coeff(-1) != self.ring.zero:
            raise BadValuation("cannot integrate an x^{-1} term")
        out = []
        for i, c in enumerate(self.coeffs):
            e = self.low + i
            if e == -1:
                out.append(self.ring.zero)
            else:
                out.append(c * Fraction(1, e + 1))
        return TruncatedSeries(self.ring, self.low + 1, out, self.order + 1)

    def compose(self, g):
        """self(g); requires self.low >= 0 and g of positive valuation."""
        if self.low < 0:
            raise BadValuation("cannot compose a Laurent series")
        if g.low < 1:
            raise BadValuation("composition argument needs positive valuation")
        work = g.order
        # coefficients of self beyond self.order would first matter at
        # y^((self.order + 1) * val(g))
        valid = min(g.order, (self.order + 1) * g.low - 1)
        result = TruncatedSeries.zero_series(self.ring, work)
        one = TruncatedSeries.one_series(self.ring, work)
        for e in range(self.order, -1, -1):
            result = result * g + one * self.coeff(e)
        return result.truncate(valid)

    def compose_inverse(self):
        """Compositional inverse g with self(g(y)) = y.

        Requires valuation exactly 1 with unit linear coefficient.
        """
        if self.low > 1 or self.valuation() != 1:
            raise BadValuation("compositional inverse needs valuation exactly 1")
        a1 = self.coeff(1)
        inv_a1 = ring_invert(a1)
        order = self.order
        # build g coefficient by coefficient
        g = [self.ring.zero, inv_a1]  # g_0, g_1
        for k in range(2, order + 1):
            gk = TruncatedSeries(self.ring, 1, g[1:] + [self.ring.zero], k)
            comp = self.truncate(k).compose(gk)
            err = comp.coeff(k)
            g.append(-(inv_a1 * err))
        return TruncatedSeries(self.ring, 1, g[1:], order)

    def exp(self):
        """exp of a series with valuation >= 1."""
        if self.low < 1 and not all(
            c == self.ring.zero for c in self.coeffs[: max(0, 1 - self.low)]
        ):
            raise BadValuation("exp needs positive valuation")
        order = self.order
        a = [self.coeff(e) if self.low <= e <= order else self.ring.zero
             for e in range(0, order + 1)]
        b = [self.ring.one]
        for k in range(1, order + 1):
            s = self.ring.zero
            for j in range(1, k + 1):
                s = s + (a[j] * Fraction(j)) * b[k - j]
            b.append(s * Fraction(1, k))
        return TruncatedSeries(self.ring, 0, b, order)

    def log(self):
        """log of a series with constant term 1."""
        if self.low > 0 or self.coeff(0) != self.ring.one:
            raise BadValuation("log needs constant term 1")
        d = self.derivative()
        return (d * self.inverse()).truncate(self.order - 1).integrate()

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == self.ring.zero:
                continue
            e = self.low + i
            parts.append(f"({c})*x^{e}" if e else f"({c})")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(x^{self.order + 1})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# univariate quotient ring Q[y]/(m(y))
# ---------------------------------------------------------------------------


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(a, b):
    n = max(len(a), len(b))
    return _poly_trim([
        (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ])


def poly_scale(a, c):
    c = _fr(c)
    if c == 0:
        return []
    return [x * c for x in a]


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def poly_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [_fr(x) for x in a]
    b = [_fr(x) for x in b]
    _poly_trim(a)
    _poly_trim(b)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = a[:]
    while r and len(r) >= len(b):
        c = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = c
        for i in range(len(b)):
            r[k + i] -= c * b[i]
        _poly_trim(r)
    return _poly_trim(q), r


def poly_gcd(a, b):
    a = _poly_trim([_fr(x) for x in a])
    b = _poly_trim([_fr(x) for x in b])
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        a = [x / a[-1] for x in a]
    return a


def poly_eval(a, t):
    r = Fraction(0)
    for c in reversed(a):
        r = r * _fr(t) + c
    return r


class QuotientRing:
    """Q[y]/(m(y)) with m monic of degree >= 1."""

    def __init__(self, modulus, varname="y"):
        m = _poly_trim([_fr(c) for c in modulus])
        if len(m) < 2:
            raise ValueError("modulus must have degree >= 1")
        if m[-1] != 1:
            m = [c / m[-1] for c in m]
        self.modulus = tuple(m)
        self.degree = len(m) - 1
        self.varname = varname
        self.zero = QuotElt(self, (Fraction(0),) * self.degree)
        one = [Fraction(0)] * self.degree
        one[0] = Fraction(1)
        self.one = QuotElt(self, tuple(one))

    def from_fraction(self, fr):
        c = [Fraction(0)] * self.degree
        c[0] = _fr(fr)
        return QuotElt(self, tuple(c))

    def gen(self):
        if self.degree == 1:
            # y is congruent to a rational
            return self.from_fraction(-self.modulus[0])
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return QuotElt(self, tuple(c))

    def element(self, coeffs):
        q, r = poly_divmod(list(coeffs), list(self.modulus))
        c = list(r) + [Fraction(0)] * (self.degree - len(r))
        return QuotElt(self, tuple(c[: self.degree]))

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"Q[{self.varname}]/(m), m degree {self.degree}"


class QuotElt:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, QuotElt):
            if other.ring != self.ring:
                raise ValueError("mixed quotient rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.from_fraction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuotElt(self.ring, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return QuotElt(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = _fr(other)
            return QuotElt(self.ring, tuple(a * f for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = poly_mul(list(self.coeffs), list(o.coeffs))
        return self.ring.element(prod)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def inverse(self):
        """Inverse via the extended Euclidean algorithm in Q[y]."""
        a = _poly_trim(list(self.coeffs))
        if not a:
            raise NonUnitLeadingCoefficient("zero is not invertible")
        m = list(self.ring.modulus)
        # extended euclid: s*a + t*m = g
        r0, r1 = m, a
        s0, s1 = [], [Fraction(1)]
        t0, t1 = [Fraction(1)], []
        while r1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_add(s0, poly_scale(poly_mul(q, s1), -1))
        if len(r0) != 1:
            raise NonUnitLeadingCoefficient("element is a zero divisor")
        inv = poly_scale(s0, Fraction(1) / r0[0])
        return self.ring.element(inv)

    def __str__(self):
        y = self.ring.varname
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*{y}" if c != 1 else y)
            else:
                parts.append(f"{c}*{y}^{e}" if c != 1 else f"{y}^{e}")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def cyclotomic_polynomial(n):
    """Coefficients (low -> high) of the n-th cyclotomic polynomial.

    Standard divisor recursion: x^n - 1 = prod_{d | n} Phi_d(x).
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]  # x^n - 1
    den = [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            den = poly_mul(den, cyclotomic_polynomial(d))
    q, r = poly_divmod(num, den)
    assert not r
    return q


# ---------------------------------------------------------------------------
# rational functions in one variable t over Q
# ---------------------------------------------------------------------------


class RationalFunction:
    """num(t)/den(t) in lowest terms, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num = _poly_trim([_fr(c) for c in num])
        den = _poly_trim([_fr(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num:
            g = poly_gcd(num, den)
            if len(g) > 1:
                num, _ = poly_divmod(num, g)
                den, _ = poly_divmod(den, g)
        else:
            den = [Fraction(1)]
        lc = den[-1]
        if lc != 1:
            num = [c / lc for c in num]
            den = [c / lc for c in den]
        self.num = tuple(num)
        self.den = tuple(den)

    @classmethod
    def one_minus_t_power(cls, r):
        """1 - t^r."""
        c = [Fraction(1)] + [Fraction(0)] * (r - 1) + [Fraction(-1)]
        return cls(c)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(poly_scale(list(self.num), other), list(self.den))
        return RationalFunction(
            poly_mul(list(self.num), list(other.num)),
            poly_mul(list(self.den), list(other.den)),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(list(self.num), poly_scale(list(self.den), other))
        return RationalFunction(
            poly_mul(list(self.num), list(other.den)),
            poly_mul(list(self.den), list(other.num)),
        )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction([other])
        num = poly_add(
            poly_mul(list(self.num), list(other.den)),
            poly_mul(list(other.num), list(self.den)),
        )
        return RationalFunction(num, poly_mul(list(self.den), list(other.den)))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(poly_scale(list(self.num), -1), list(self.den))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction([other])
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction([Fraction(1)])
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self):
        return not self.num

    def inverse(self):
        if not self.num:
            raise NonUnitLeadingCoefficient("zero rational function")
        return RationalFunction(list(self.den), list(self.num))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction([other])
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, t):
        d = poly_eval(list(self.den), t)
        if d == 0:
            raise ZeroDivisionError("pole of rational function")
        return poly_eval(list(self.num), t) / d

    def __str__(self):
        def fmt(p):
            parts = []
            for e, c in enumerate(p):
                if c == 0:
                    continue
                if e == 0:
                    parts.append(str(c))
                elif e == 1:
                    parts.append(f"{c}*t" if c != 1 else "t")
                else:
                    parts.append(f"{c}*t^{e}" if c != 1 else f"t^{e}")
            return " + ".join(parts) if parts else "0"

        if self.den == (Fraction(1),):
            return fmt(self.num)
        return f"({fmt(self.num)}) / ({fmt(self.den)})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# multivariate truncated polynomials, generic coefficients
# ---------------------------------------------------------------------------


class MultiPoly:
    """Polynomial in x_1..x_k with coefficients in a generic ring context.

    An optional total-degree cap makes this a truncated multivariate series:
    terms beyond the cap are dropped, and binary operations take the minimum
    of the operands' caps.
    """

    __slots__ = ("ring", "nvars", "terms", "cap")

    def __init__(self, ring, nvars, terms, cap=None):
        self.ring = ring
        self.nvars = nvars
        self.cap = cap
        out = {}
        for e, c in terms.items():
            if cap is not None and sum(e) > cap:
                continue
            if not (c == ring.zero):
                out[tuple(e)] = c
        self.terms = out

    @classmethod
    def zero(cls, ring, nvars, cap=None):
        return cls(ring, nvars, {}, cap)

    @classmethod
    def const(cls, ring, nvars, c, cap=None):
        return cls(ring, nvars, {(0,) * nvars: c}, cap)

    @classmethod
    def gen(cls, ring, nvars, i, cap=None):
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(ring, nvars, {e: ring.one}, cap)

    def _mincap(self, other):
        if self.cap is None:
            return other.cap
        if other.cap is None:
            return self.cap
        return min(self.cap, other.cap)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.ring, self.nvars,
                                    self.ring.from_fraction(other), self.cap)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, self.ring.zero) + c
        return MultiPoly(self.ring, self.nvars, terms, self._mincap(other))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, self.nvars,
                         {e: -c for e, c in self.terms.items()}, self.cap)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.ring, self.nvars,
                                    self.ring.from_fraction(other), self.cap)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            cap = self._mincap(other)
            terms = {}
            for e1, c1 in self.terms.items():
                d1 = sum(e1)
                for e2, c2 in other.terms.items():
                    if cap is not None and d1 + sum(e2) > cap:
                        continue
                    e = tuple(a + b for a, b in zip(e1, e2))
                    prev = terms.get(e)
                    terms[e] = c1 * c2 if prev is None else prev + c1 * c2
            return MultiPoly(self.ring, self.nvars, terms, cap)
        if isinstance(other, (int, Fraction)):
            f = _fr(other)
            return MultiPoly(self.ring, self.nvars,
                             {e: c * f for e, c in self.terms.items()}, self.cap)
        return MultiPoly(self.ring, self.nvars,
                         {e: c * other for e, c in self.terms.items()}, self.cap)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = MultiPoly.const(self.ring, self.nvars, self.ring.one, self.cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.ring.zero)

    def permute(self, perm):
        """Relabel variables: new variable perm[i] receives old exponent i."""
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            terms[tuple(ne)] = c
        return MultiPoly(self.ring, self.nvars, terms, self.cap)

    def antisymmetrize(self):
        """Sum of sign(sigma) * sigma(self) over all variable permutations."""
        total = MultiPoly.zero(self.ring, self.nvars, self.cap)
        for perm in permutations(range(self.nvars)):
            # sign of permutation
            sgn = 1
            seen = [False] * self.nvars
            for i in range(self.nvars):
                if seen[i]:
                    continue
                j = i
                clen = 0
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    clen += 1
                if clen % 2 == 0:
                    sgn = -sgn
            p = self.permute(perm)
            total = total + (p if sgn == 1 else -p)
        return total

    def divide_linear(self, i, j):
        """Exact division by (x_i - x_j); raises if the remainder survives.

        If the dividend is degree-capped, the quotient cap drops by one and
        only the remainder below the cap is checked.
        """
        # univariate view in x_i
        by_deg = {}
        for e, c in self.terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            by_deg.setdefault(k, {})[rest] = c
        if not by_deg:
            return MultiPoly.zero(self.ring, self.nvars,
                                  None if self.cap is None else self.cap - 1)
        d = max(by_deg)
        cap = None if self.cap is None else self.cap - 1
        xj = MultiPoly.gen(self.ring, self.nvars, j, self.cap)
        cs = [MultiPoly(self.ring, self.nvars, by_deg.get(k, {}), self.cap)
              for k in range(d + 1)]
        q = [None] * d
        carry = MultiPoly.zero(self.ring, self.nvars, self.cap)
        for k in range(d, 0, -1):
            qk = cs[k] + carry
            q[k - 1] = qk
            carry = xj * qk
        rem = cs[0] + carry
        if cap is not None:
            rem = MultiPoly(self.ring, self.nvars, rem.terms, self.cap)
            checkable = {e: c for e, c in rem.terms.items() if sum(e) <= self.cap}
        else:
            checkable = rem.terms
        if checkable:
            raise ExactDivisionError("not divisible by (x_i - x_j)")
        out = MultiPoly.zero(self.ring, self.nvars, cap)
        for k in range(d):
            shift = {}
            for e, c in q[k].terms.items():
                ne = list(e)
                ne[i] += k
                shift[tuple(ne)] = c
            out = out + MultiPoly(self.ring, self.nvars, shift, cap)
        return out

    def substitute_var(self, i, value):
        """Replace x_i by another MultiPoly (same variable set)."""
        by_deg = {}
        for e, c in self.terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            by_deg.setdefault(k, {})[rest] = c
        if not by_deg:
            return self
        d = max(by_deg)
        result = MultiPoly.zero(self.ring, self.nvars, self._mincap(value))
        # Horner
        for k in range(d, -1, -1):
            ck = MultiPoly(self.ring, self.nvars, by_deg.get(k, {}), self.cap)
            result = result * value + ck
        return result

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            mon = "*".join(
                f"x{k + 1}" if p == 1 else f"x{k + 1}^{p}"
                for k, p in enumerate(e) if p
            )
            c = self.terms[e]
            parts.append(f"({c})*{mon}" if mon else f"({c})")
        return " + ".join(parts)

    __repr__ = __str__


def series_inverse(s):
    """Multiplicative inverse of a truncated series (module-level alias)."""
    return s.inverse()


def series_compose_inverse(f):
    """Compositional inverse of a truncated series (module-level alias)."""
    return f.compose_inverse()
