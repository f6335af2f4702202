"""Finite exact models of cohomology rings with Chern class and integration.

A CohomologyModel is a finite graded commutative Q-algebra given by a basis,
structure constants, a distinguished total Chern class and a top-degree
integration functional.  Elements are dicts mapping basis labels to
coefficients; coefficients may be Fractions or elements of any commutative
ring (weighted polynomials, q-series, ...), which is what lets genus-valued
characteristic classes live in the same machinery.

Constructors cover complex projective spaces, products, smooth hypersurfaces,
and (twisted) projective bundles of sums of line bundles; the catalog exposes
the standard generator manifolds used throughout.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra_kernel import QQ, _fr


class UnknownName(KeyError):
    pass


class RankZeroTotal(ValueError):
    pass


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


def partitions(n):
    """All partitions of n as non-increasing tuples, in a fixed order."""
    if n == 0:
        return [()]
    out = []

    def rec(rest, maxpart, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, acc + [p])

    rec(n, n, [])
    return out


def partition_key(part):
    """Serialization key, e.g. (2, 1, 1) -> "2,1,1"."""
    return ",".join(str(p) for p in part)


class ChernVector:
    """All Chern numbers of an n-dimensional class: partition -> Fraction."""

    __slots__ = ("dim", "numbers")

    def __init__(self, dim, numbers=None):
        self.dim = dim
        self.numbers = {p: Fraction(0) for p in partitions(dim)}
        if numbers:
            for p, v in numbers.items():
                key = tuple(sorted(p, reverse=True))
                if sum(key) != dim:
                    raise ValueError(f"partition {p} does not sum to {dim}")
                self.numbers[key] = _fr(v)

    def __getitem__(self, part):
        return self.numbers[tuple(sorted(part, reverse=True))]

    def __eq__(self, other):
        return (
            isinstance(other, ChernVector)
            and self.dim == other.dim
            and self.numbers == other.numbers
        )

    def __add__(self, other):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return ChernVector(
            self.dim,
            {p: self.numbers[p] + other.numbers[p] for p in self.numbers},
        )

    def __sub__(self, other):
        return self + (other * Fraction(-1))

    def __mul__(self, scalar):
        s = _fr(scalar)
        return ChernVector(self.dim, {p: v * s for p, v in self.numbers.items()})

    __rmul__ = __mul__

    def is_su(self):
        """True if every Chern number involving c_1 vanishes."""
        return all(
            v == 0 for p, v in self.numbers.items() if 1 in p and self.dim > 1
        ) and (self.dim != 1 or self.numbers[(1,)] == 0)

    def __repr__(self):
        nz = {partition_key(p): str(v) for p, v in self.numbers.items() if v != 0}
        return f"ChernVector(dim={self.dim}, {nz})"


# ---------------------------------------------------------------------------
# the model class
# ---------------------------------------------------------------------------


class CohomologyModel:
    """Finite graded commutative algebra with Chern class and integration.

    Parameters
    ----------
    dim : complex dimension of the underlying manifold (class).
    labels : basis labels (hashable), including the unit label.
    degree : dict label -> complex degree.
    unit : the degree-0 basis label.
    mul_table : dict (label, label) -> dict label -> Fraction.
    integral : dict label -> Fraction (value of the integration functional).
    chern : element dict (total Chern class, Fraction coefficients).
    name : display name.
    """

    def __init__(self, dim, labels, degree, unit, mul_table, integral, chern,
                 name="X"):
        self.dim = dim
        self.labels = list(labels)
        self.degree = dict(degree)
        self.unit = unit
        self.mul_table = mul_table
        self.integral = dict(integral)
        self.chern = dict(chern)
        self.name = name

    # -- element algebra (generic coefficients) ------------------------------

    def zero_elt(self):
        return {}

    def one_elt(self):
        return {self.unit: Fraction(1)}

    def add(self, u, v):
        out = dict(u)
        for l, c in v.items():
            if l in out:
                out[l] = out[l] + c
            else:
                out[l] = c
        return {l: c for l, c in out.items() if not _is_zeroish(c)}

    def scale(self, u, c):
        return {l: v * c for l, v in u.items()}

    def mul(self, u, v):
        out = {}
        for l1, c1 in u.items():
            for l2, c2 in v.items():
                prod = c1 * c2
                for l3, s in self.mul_table.get((l1, l2), {}).items():
                    add = prod * s
                    if l3 in out:
                        out[l3] = out[l3] + add
                    else:
                        out[l3] = add
        return {l: c for l, c in out.items() if not _is_zeroish(c)}

    def power(self, u, n):
        r = self.one_elt()
        for _ in range(n):
            r = self.mul(r, u)
        return r

    def degree_part(self, u, d):
        return {l: c for l, c in u.items() if self.degree[l] == d}

    def integrate(self, u):
        """Evaluate on the fundamental class; generic coefficients allowed."""
        total = None
        for l, c in u.items():
            w = self.integral.get(l, Fraction(0))
            if w == 0:
                continue
            term = c * w
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    # -- Chern data ----------------------------------------------------------

    def chern_class(self, i):
        return self.degree_part(self.chern, i)

    def chern_number(self, part):
        u = self.one_elt()
        for p in part:
            u = self.mul(u, self.chern_class(p))
        return self.integrate(u)

    def __repr__(self):
        return f"<CohomologyModel {self.name}, dim {self.dim}>"


def _is_zeroish(c):
    if isinstance(c, (int, Fraction)):
        return c == 0
    z = getattr(c, "is_zero", None)
    if z is not None:
        return z()
    return False


def chern_vector(m):
    """All Chern numbers of a model (or pass a ChernVector through)."""
    if isinstance(m, ChernVector):
        return m
    return ChernVector(
        m.dim, {p: m.chern_number(p) for p in partitions(m.dim)}
    )


# ---------------------------------------------------------------------------
# Milnor numbers
# ---------------------------------------------------------------------------


def power_sum_in_chern(n):
    """The power sum p_n as a polynomial in c_1..c_n: partition -> integer.

    Newton's identities: p_k = c_1 p_{k-1} - c_2 p_{k-2} + ...
    + (-1)^{k-1} k c_k.
    """
    ps = [None, {(1,): 1}]
    for k in range(2, n + 1):
        acc = {}
        for i in range(1, k):
            sign = (-1) ** (i - 1)
            for part, coeff in ps[k - i].items():
                newp = tuple(sorted(part + (i,), reverse=True))
                acc[newp] = acc.get(newp, 0) + sign * coeff
        ek = (k,)
        acc[ek] = acc.get(ek, 0) + (-1) ** (k - 1) * k
        ps.append(acc)
    return ps[n]


def milnor_number(m):
    """s(X) = p_n[X], the power-sum characteristic number."""
    cv = chern_vector(m)
    if cv.dim == 0:
        return Fraction(1)
    total = Fraction(0)
    for part, coeff in power_sum_in_chern(cv.dim).items():
        total += coeff * cv[part]
    return total


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def cp_model(n):
    """CP_n: Z[g]/(g^{n+1}), c = (1+g)^{n+1}, integral of g^n is 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    labels = list(range(n + 1))
    degree = {i: i for i in labels}
    mul = {}
    for i in labels:
        for j in labels:
            mul[(i, j)] = {i + j: Fraction(1)} if i + j <= n else {}
    integral = {n: Fraction(1)}
    chern = {}
    from math import comb
    for i in labels:
        chern[i] = Fraction(comb(n + 1, i))
    return CohomologyModel(n, labels, degree, 0, mul, integral, chern,
                           name=f"CP{n}")


def point_model():
    return cp_model(0)


def product_model(x, y):
    """X x Y with tensor basis and product Chern class / integration."""
    labels = [(a, b) for a in x.labels for b in y.labels]
    degree = {(a, b): x.degree[a] + y.degree[b] for a, b in labels}
    mul = {}
    for a1, b1 in labels:
        for a2, b2 in labels:
            out = {}
            for a3, s1 in x.mul_table.get((a1, a2), {}).items():
                for b3, s2 in y.mul_table.get((b1, b2), {}).items():
                    out[(a3, b3)] = out.get((a3, b3), Fraction(0)) + s1 * s2
            mul[((a1, b1), (a2, b2))] = out
    integral = {}
    for a, b in labels:
        v = x.integral.get(a, Fraction(0)) * y.integral.get(b, Fraction(0))
        if v != 0:
            integral[(a, b)] = v
    chern = {}
    for a, ca in x.chern.items():
        for b, cb in y.chern.items():
            chern[(a, b)] = chern.get((a, b), Fraction(0)) + ca * cb
    chern = {l: c for l, c in chern.items() if c != 0}
    m = CohomologyModel(x.dim + y.dim, labels, degree, (x.unit, y.unit), mul,
                        integral, chern, name=f"{x.name}x{y.name}")
    return m


def hypersurface_model(ambient, c1_L):
    """Smooth divisor dual to a line bundle L inside an ambient model.

    The model reuses the ambient ring (restricted classes); integration is
    u -> integral_ambient(u * c1(L)) and c = c(ambient)/(1 + c1(L)).
    """
    if ambient.dim < 1:
        raise ValueError("ambient must have positive dimension")
    n = ambient.dim - 1
    # c(H) = c(ambient) * (1 + c1L)^{-1}; the inverse is a finite geometric
    # series because c1L is nilpotent.
    inv = ambient.one_elt()
    term = ambient.one_elt()
    for _ in range(ambient.dim):
        term = ambient.scale(ambient.mul(term, c1_L), Fraction(-1))
        inv = ambient.add(inv, term)
    chern = ambient.mul(ambient.chern, inv)
    chern = {l: c for l, c in chern.items() if ambient.degree[l] <= n}
    integral = {}
    for l in ambient.labels:
        v = ambient.integrate(ambient.mul({l: Fraction(1)}, c1_L))
        if v != 0:
            integral[l] = v
    return CohomologyModel(n, ambient.labels, ambient.degree, ambient.unit,
                           ambient.mul_table, integral, chern,
                           name=f"H({ambient.name})")


def twisted_proj_bundle_model(base, e_lines=(), e_trivial=0,
                              f_lines=(), f_trivial=0, name=None):
    """Twisted projectivization of E + F over a base model.

    E and F are sums of line bundles (given by their first Chern classes,
    elements of the base model) and trivial summands.  F empty gives the
    ordinary projective bundle of E.  The stable complex structure twists
    the F-part, which shows up in three places: the bundle V = E + F-bar
    entering the ring relation, the Chern factors (1 - t + y_j), and the
    orientation sign (-1)^q in the integration rule
    t^{p+q-1} * pi^*(alpha) -> (-1)^q alpha[B].
    """
    e_lines = [dict(x) for x in e_lines]
    f_lines = [dict(y) for y in f_lines]
    p = len(e_lines) + e_trivial
    q = len(f_lines) + f_trivial
    r = p + q
    if r == 0:
        raise RankZeroTotal("E + F must have positive rank")
    dim = base.dim + r - 1

    # V = E + F-bar; roots: E roots and negated F roots (trivial -> 0)
    v_roots = (
        e_lines
        + [base.zero_elt()] * e_trivial
        + [base.scale(y, Fraction(-1)) for y in f_lines]
        + [base.zero_elt()] * f_trivial
    )
    # elementary symmetric functions of the roots via prod (1 + x_i)
    cv_total = base.one_elt()
    for x in v_roots:
        cv_total = base.mul(cv_total, base.add(base.one_elt(), x))
    cV = [base.degree_part(cv_total, k) for k in range(r + 1)]

    labels = [(bl, j) for bl in base.labels for j in range(r)]
    degree = {(bl, j): base.degree[bl] + j for bl, j in labels}
    unit = (base.unit, 0)

    # reduction of t^j (j >= r) to the canonical basis, as a map
    # j -> element dict {(bl, jj<r): Fraction-combination over base labels}
    # we reduce elements directly instead
    def reduce_elt(raw):
        # raw: dict (bl, j) -> Fraction with j possibly >= r
        out = {}
        pending = dict(raw)
        while pending:
            (bl, j), c = pending.popitem()
            if c == 0:
                continue
            if j < r:
                out[(bl, j)] = out.get((bl, j), Fraction(0)) + c
                continue
            # t^j = -sum_{k=1..r} c_k(V) t^{j-k}
            for k in range(1, r + 1):
                prod = base.mul({bl: c}, cV[k])
                for bl2, c2 in prod.items():
                    key = (bl2, j - k)
                    pending[key] = pending.get(key, Fraction(0)) - c2
        return {l: c for l, c in out.items() if c != 0}

    mul = {}
    for bl1, j1 in labels:
        for bl2, j2 in labels:
            raw = {}
            for bl3, s in base.mul_table.get((bl1, bl2), {}).items():
                raw[(bl3, j1 + j2)] = raw.get((bl3, j1 + j2), Fraction(0)) + s
            mul[((bl1, j1), (bl2, j2))] = reduce_elt(raw)

    sign = Fraction((-1) ** q)
    integral = {}
    for bl in base.labels:
        v = base.integral.get(bl, Fraction(0))
        if v != 0:
            integral[(bl, r - 1)] = sign * v

    model = CohomologyModel(dim, labels, degree, unit, mul, integral, {},
                            name=name or f"TwP({base.name};{p},{q})")

    def lift(u):
        return {(bl, 0): c for bl, c in u.items()}

    t = {(base.unit, 1): Fraction(1)}
    chern = lift(base.chern)
    for x in e_lines:
        factor = model.add(model.add(model.one_elt(), t), lift(x))
        chern = model.mul(chern, factor)
    for _ in range(e_trivial):
        chern = model.mul(chern, model.add(model.one_elt(), t))
    for y in f_lines:
        factor = model.add(
            model.add(model.one_elt(), model.scale(t, Fraction(-1))), lift(y)
        )
        chern = model.mul(chern, factor)
    for _ in range(f_trivial):
        chern = model.mul(
            chern, model.add(model.one_elt(), model.scale(t, Fraction(-1)))
        )
    model.chern = {l: c for l, c in chern.items() if model.degree[l] <= dim}
    return model


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def quartic_surface():
    """Degree-4 surface in CP3 (a K3 surface): c_1^2 = 0, c_2 = 24."""
    amb = cp_model(3)
    c1_L = {1: Fraction(4)}  # c1(O(4)) = 4g
    m = hypersurface_model(amb, c1_L)
    m.name = "W2"
    return m


def w_odd(n):
    """W_{2n+1}: twisted projective bundle over the quartic surface.

    E = trivial^(n-1) + nu^2, F = trivial^(n-2) + nu^{-1} + nu^{-1},
    where nu has c_1 = 4g (restricted from the ambient CP3).
    """
    if n < 2:
        raise ValueError("defined for n >= 2")
    base = quartic_surface()
    g = {1: Fraction(1)}
    nu2 = base.scale(g, Fraction(8))
    nu_inv = base.scale(g, Fraction(-4))
    m = twisted_proj_bundle_model(
        base,
        e_lines=[nu2], e_trivial=n - 1,
        f_lines=[nu_inv, nu_inv], f_trivial=n - 2,
        name=f"W{2 * n + 1}",
    )
    return m


def w_even(n):
    """W_{2n+2}: twisted projective bundle over CP3.

    E = trivial^(n-1) + K, F = trivial^(n-1) + K^{-2}, c_1(K) = 4g.
    """
    if n < 2:
        raise ValueError("defined for n >= 2")
    base = cp_model(3)
    g = {1: Fraction(1)}
    K = base.scale(g, Fraction(4))
    K_m2 = base.scale(g, Fraction(-8))
    m = twisted_proj_bundle_model(
        base,
        e_lines=[K], e_trivial=n - 1,
        f_lines=[K_m2], f_trivial=n - 1,
        name=f"W{2 * n + 2}",
    )
    return m


def tw_cp(p, q):
    """C~P_{p,q}: twisted projective space (bundle over a point)."""
    return twisted_proj_bundle_model(
        point_model(), e_trivial=p, f_trivial=q, name=f"TwCP({p},{q})"
    )


def catalog(name):
    """Look up a manifold (model or Chern-number vector) by name.

    Supported: W1, W2, ... (all n), CPn, TwCP(p,q), K3.
    """
    name = name.strip()
    if name == "W1":
        m = cp_model(1)
        m.name = "W1"
        return m
    if name in ("W2", "K3"):
        return quartic_surface()
    if name == "W3":
        return ChernVector(3, {(3,): Fraction(2)})
    if name == "W4":
        return ChernVector(4, {(2, 2): Fraction(2), (4,): Fraction(6)})
    if name.startswith("W") and name[1:].isdigit():
        k = int(name[1:])
        if k >= 5:
            if k % 2 == 1:
                return w_odd((k - 1) // 2)
            return w_even((k - 2) // 2)
    if name.startswith("CP") and name[2:].isdigit():
        return cp_model(int(name[2:]))
    if name.startswith("TwCP(") and name.endswith(")"):
        inner = name[5:-1]
        p, q = (int(s) for s in inner.split(","))
        return tw_cp(p, q)
    raise UnknownName(name)


# ---------------------------------------------------------------------------
# JSON manifold schema
# ---------------------------------------------------------------------------


def model_from_json(obj):
    """Build a manifold from the JSON schema used by the CLI.

    {"type":"cp","n":...}
    {"type":"hypersurface","ambient":...,"c1":[...]}
    {"type":"twisted_bundle","base":...,
     "E":{"trivial":k,"lines":[[...], ...]},"F":{...}}
    {"type":"product","factors":[...]}
    {"type":"chern_numbers","dim":n,"numbers":{"1,1":"2",...}}
    {"type":"catalog","name":"W5"}
    """
    t = obj["type"]
    if t == "cp":
        return cp_model(int(obj["n"]))
    if t == "catalog":
        return catalog(obj["name"])
    if t == "product":
        factors = [model_from_json(f) for f in obj["factors"]]
        if not factors:
            return point_model()
        m = factors[0]
        for f in factors[1:]:
            m = product_model(m, f)
        return m
    if t == "hypersurface":
        amb = model_from_json(obj["ambient"])
        c1 = _element_from_list(amb, obj["c1"])
        return hypersurface_model(amb, c1)
    if t == "twisted_bundle":
        base = model_from_json(obj["base"])
        e = obj.get("E", {})
        f = obj.get("F", {})
        e_lines = [_element_from_list(base, v) for v in e.get("lines", [])]
        f_lines = [_element_from_list(base, v) for v in f.get("lines", [])]
        return twisted_proj_bundle_model(
            base,
            e_lines=e_lines, e_trivial=int(e.get("trivial", 0)),
            f_lines=f_lines, f_trivial=int(f.get("trivial", 0)),
        )
    if t == "chern_numbers":
        dim = int(obj["dim"])
        numbers = {}
        for key, val in obj.get("numbers", {}).items():
            part = tuple(int(s) for s in key.split(","))
            numbers[part] = Fraction(val)
        return ChernVector(dim, numbers)
    raise UnknownName(f"unknown manifold type {t!r}")


def _element_from_list(model, coeffs):
    """Integer vector over the degree-2 (complex degree 1) basis."""
    deg1 = [l for l in model.labels if model.degree[l] == 1]
    if len(coeffs) != len(deg1):
        raise ValueError(
            f"expected {len(deg1)} coefficients for the degree-2 basis"
        )
    out = {}
    for l, c in zip(deg1, coeffs):
        c = Fraction(c)
        if c != 0:
            out[l] = c
    return out
