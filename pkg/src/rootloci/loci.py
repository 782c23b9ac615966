"""Coincident root loci: defining equations, membership, fibers, and the
singularity stratification.

A binary form of degree d lives in projective d-space via its coefficient
vector (a_0 : ... : a_d).  The locus of forms whose roots coincide
according to a partition lam is cut out by the ideal computed in
ideal_of_X (elimination from the chart generators, then homogenization);
its combinatorial shadow (multiplicity partitions, splittings) answers
membership and singularity questions without any Groebner work.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import __version__ as _pkg_version
from .errors import DomainError
from .expansion import ChartIndex, theta_chart
from .groebner import canonical_weight, eliminate
from .partitions import (
    Partition,
    classify_stratum,
    coarsenings,
    is_even,
    make_partition,
    splittings,
)
from .polyring import Poly, Var, normalize_and_homogenize, poly_from_obj, poly_to_obj

#: bump when the engine's normalized output could change; cache entries
#: from other versions are recomputed
ENGINE_VERSION = "rootloci-elim-1"


class RootlociInternalError(AssertionError):
    """Two independent routes disagreed; indicates a bug, not bad input."""


# -- forms -------------------------------------------------------------------


class BinaryForm:
    """Exact coefficient vector (a_0, ..., a_d) of a degree-d binary form
    sum_j a_j x^(d-j) y^j; not all coefficients zero."""

    __slots__ = ("coeffs", "d")

    def __init__(self, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if not coeffs or all(c == 0 for c in coeffs):
            raise DomainError("binary form needs a nonzero coefficient vector")
        self.coeffs = coeffs
        self.d = len(coeffs) - 1

    @classmethod
    def from_string(cls, text):
        pieces = [s.strip() for s in text.split(",")]
        try:
            return cls([Fraction(s) for s in pieces])
        except (ValueError, ZeroDivisionError):
            raise DomainError("bad coefficient list %r" % (text,)) from None

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self):
        return "BinaryForm(%s)" % (self,)


@dataclass(frozen=True)
class FactoredForm:
    """A form given as scalar * prod (u_i x + v_i y)^(m_i) with pairwise
    non-proportional linear factors."""

    factors: tuple  # ((u, v), multiplicity), ...
    scalar: Fraction = Fraction(1)

    def __post_init__(self):
        if not self.factors:
            raise DomainError("factored form needs at least one factor")
        if self.scalar == 0:
            raise DomainError("factored form needs a nonzero scalar")
        for (u, v), m in self.factors:
            if m < 1:
                raise DomainError("factor multiplicities must be >= 1")
            if u == 0 and v == 0:
                raise DomainError("zero linear factor")
        n = len(self.factors)
        for i in range(n):
            (u1, v1), _ = self.factors[i]
            for j in range(i + 1, n):
                (u2, v2), _ = self.factors[j]
                if u1 * v2 - u2 * v1 == 0:
                    raise DomainError("proportional linear factors must be merged")

    @property
    def degree(self):
        return sum(m for _, m in self.factors)

    def multiplicity_partition(self):
        return make_partition([m for _, m in self.factors])

    def expand(self):
        """Multiply out to a BinaryForm."""
        coeffs = [self.scalar]
        for (u, v), m in self.factors:
            for _ in range(m):
                new = [0] * (len(coeffs) + 1)
                for i, c in enumerate(coeffs):
                    new[i] += c * u
                    new[i + 1] += c * v
                coeffs = new
        return BinaryForm(coeffs)

    @classmethod
    def from_string(cls, text, scalar="1"):
        """Parse "u,v:m;u,v:m" (multiplicity defaults to 1)."""
        factors = []
        for piece in text.split(";"):
            piece = piece.strip()
            if not piece:
                continue
            if ":" in piece:
                lin, mult = piece.rsplit(":", 1)
            else:
                lin, mult = piece, "1"
            uv = [s.strip() for s in lin.split(",")]
            if len(uv) != 2:
                raise DomainError("bad linear factor %r" % (piece,))
            try:
                u, v, m = Fraction(uv[0]), Fraction(uv[1]), int(mult)
            except (ValueError, ZeroDivisionError):
                raise DomainError("bad factor %r" % (piece,)) from None
            factors.append(((u, v), m))
        try:
            s = Fraction(scalar)
        except (ValueError, ZeroDivisionError):
            raise DomainError("bad scalar %r" % (scalar,)) from None
        return cls(tuple(factors), s)


def _normalize_vector(coeffs):
    """Scale an exact rational vector to coprime integers with positive
    first nonzero entry."""
    den = 1
    for c in coeffs:
        c = Fraction(c)
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    lead = next((c for c in ints if c), None)
    if lead is None:
        raise DomainError("zero vector cannot be normalized")
    if lead < 0:
        g = -g
    return tuple(c // g for c in ints)


@dataclass(frozen=True)
class FiberPoint:
    """One preimage of a form under the multiplication map: for each active
    part size r the coefficient vector of the degree-e_r factor, normalized
    up to scalar."""

    forms: tuple  # ((r, coefficient tuple), ...) ascending in r

    def form(self, r):
        for rr, vec in self.forms:
            if rr == r:
                return vec
        raise DomainError("no factor of part size %d" % (r,))

    def expand_product(self):
        """Coefficient vector of prod_r G_r^r, normalized."""
        coeffs = [Fraction(1)]
        for r, vec in self.forms:
            for _ in range(r):
                new = [Fraction(0)] * (len(coeffs) + len(vec) - 1)
                for i, a in enumerate(coeffs):
                    for k, b in enumerate(vec):
                        new[i + k] += a * b
                coeffs = new
        return _normalize_vector(coeffs)


# -- multiplicity partition via squarefree decomposition ---------------------


def _poly1_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly1_deriv(c):
    return [k * c[k] for k in range(1, len(c))]


def _poly1_divmod(a, b):
    a = list(a)
    if not b:
        raise DomainError("univariate division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = Fraction(1) / b[-1]
    while len(a) >= len(b) and _poly1_trim(a):
        shift = len(a) - len(b)
        factor = a[-1] * inv
        q[shift] = factor
        for i, bc in enumerate(b):
            a[shift + i] -= factor * bc
        _poly1_trim(a)
    return _poly1_trim(q), a


def _poly1_monic(c):
    if not c:
        return c
    inv = Fraction(1) / c[-1]
    return [x * inv for x in c]


def _poly1_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _poly1_divmod(a, b)
        a, b = b, r
    return _poly1_monic(a)


def _poly1_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly1_trim(out)


def squarefree_decomposition(coeffs):
    """Yun's algorithm over the rationals.

    Input: ascending coefficients of a univariate polynomial f (deg >= 1).
    Output: list of (i, P_i coefficients) with f = const * prod P_i^i, the
    P_i squarefree, pairwise coprime, monic; factors with P_i = 1 omitted.
    """
    f = _poly1_monic(_poly1_trim([Fraction(c) for c in coeffs]))
    if len(f) < 2:
        raise DomainError("squarefree decomposition needs degree >= 1")
    df = _poly1_deriv(f)
    a = _poly1_gcd(f, df)
    b, _ = _poly1_divmod(f, a)
    c, _ = _poly1_divmod(df, a)
    d = _poly1_sub(c, _poly1_deriv(b))
    out = []
    i = 1
    while len(b) > 1:
        p = _poly1_gcd(b, d)  # gcd(b, 0) = monic b, the final factor
        if len(p) > 1:
            out.append((i, tuple(p)))
        b, _ = _poly1_divmod(b, p)
        cnew, _ = _poly1_divmod(d, p) if d else ([], [])
        d = _poly1_sub(cnew, _poly1_deriv(b))
        i += 1
    return out


def multiplicity_partition(form):
    """The multiset of root multiplicities of a nonzero binary form on the
    projective line.

    Dehomogenize to f(x) = F(x, 1); the point at infinity contributes
    d - deg f; the finite roots come from the squarefree decomposition
    (distinct roots of a squarefree rational polynomial stay distinct over
    the algebraic closure, so no factoring is ever needed).
    """
    if not isinstance(form, BinaryForm):
        raise DomainError("multiplicity_partition expects a BinaryForm")
    d = form.d
    # f(x) = sum_j a_j x^(d-j): ascending order index k = d - j
    f = [form.coeffs[d - k] for k in range(d + 1)]
    f = _poly1_trim([Fraction(c) for c in f])
    inf_mult = d - (len(f) - 1)
    parts = [inf_mult] if inf_mult else []
    if len(f) > 1:
        for i, p in squarefree_decomposition(f):
            parts.extend([i] * (len(p) - 1))
    return make_partition(parts)


# -- defining equations -------------------------------------------------------


def _cache_path(cache_dir, lam):
    name = "ideal_" + "_".join(str(p) for p in lam.parts) + ".json"
    return os.path.join(cache_dir, name)


def _cache_load(path, lam):
    try:
        with open(path, "r", encoding="ascii") as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    if (
        data.get("schema") != 1
        or data.get("engine") != ENGINE_VERSION
        or data.get("partition") != list(lam.parts)
    ):
        return None
    try:
        return tuple(poly_from_obj(obj) for obj in data["generators"])
    except (KeyError, DomainError):
        return None


def _cache_store(path, lam, gens):
    data = {
        "schema": 1,
        "engine": ENGINE_VERSION,
        "partition": list(lam.parts),
        "generators": [poly_to_obj(g) for g in gens],
    }
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            json.dump(data, fh, indent=1)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def default_cache_dir():
    return os.environ.get("ROOTLOCI_CACHE_DIR", "cache")


def ideal_of_X(lam, *, max_pairs=None, max_ops=None, cache_dir=None, use_cache=True):
    """Homogeneous defining equations of the coincident root locus.

    Eliminates the chart coefficient coordinates from the chart generators
    z_j - theta_j (leading-coefficient chart, where theta_0 = 1), then
    homogenizes each eliminated generator in z_0.  Results are primitive
    integer polynomials, deterministically sorted; cached on disk per
    partition and engine version.
    """
    if cache_dir is None:
        cache_dir = default_cache_dir()
    path = _cache_path(cache_dir, lam)
    if use_cache:
        cached = _cache_load(path, lam)
        if cached is not None:
            return cached
    alpha = ChartIndex.zero(lam)
    gens = [
        Poly.variable(Var.z(j)) - theta_chart(lam, alpha, j)
        for j in range(1, lam.d + 1)
    ]
    drop = [
        Var.w(r, t)
        for r in lam.active_sizes()
        for t in range(1, lam.multiplicity(r) + 1)
    ]
    affine = eliminate(
        gens,
        drop,
        max_pairs=max_pairs,
        max_ops=max_ops,
        select_weights=canonical_weight,
    )
    z0 = Var.z(0)
    out = tuple(
        sorted(
            (normalize_and_homogenize(g, z0) for g in affine),
            key=lambda p: (p.total_degree(), sorted(m.ckey() for m in p.terms)),
        )
    )
    if use_cache:
        _cache_store(path, lam, out)
    return out


def evaluate_at_form(p, form):
    """Exact value of a polynomial in the Z variables at a form's
    coefficient vector (z_j -> a_j)."""
    assignment = {Var.z(j): form.coeffs[j] for j in range(form.d + 1)}
    return p.evaluate(assignment)


# -- membership and fibers ----------------------------------------------------


def is_member(form, lam, *, ideal=None):
    """Does the form lie on the locus of `lam`?

    Decided combinatorially: the multiplicity partition must admit a
    splitting into lam.  When generators are supplied (or cached from
    ideal_of_X) the answer is cross-checked against their vanishing.
    """
    if form.d != lam.d:
        raise DomainError(
            "degree mismatch: form has degree %d, partition sums to %d"
            % (form.d, lam.d)
        )
    mu = multiplicity_partition(form)
    answer = bool(splittings(mu, lam))
    if ideal is not None:
        vanishes = all(evaluate_at_form(g, form) == 0 for g in ideal)
        if vanishes != answer:
            raise RootlociInternalError(
                "combinatorial membership %s disagrees with ideal vanishing %s "
                "for form %s on %s" % (answer, vanishes, form, lam)
            )
    return answer


class RootlociInternalError(AssertionError):
    """Two independent routes disagreed; indicates a bug, not bad input."""


def fiber_points(factored, lam):
    """All preimages of a factored form under the multiplication map of
    `lam`, one per splitting of its multiplicity partition."""
    if factored.degree != lam.d:
        raise DomainError(
            "degree mismatch: form has degree %d, partition sums to %d"
            % (factored.degree, lam.d)
        )
    # slot k of the multiplicity partition corresponds to factors sorted by
    # descending multiplicity (ties broken by the factor order given)
    order = sorted(
        range(len(factored.factors)),
        key=lambda i: -factored.factors[i][1],
    )
    mu = make_partition([m for _, m in factored.factors])
    points = []
    for split in splittings(mu, lam):
        forms = []
        for r in lam.active_sizes():
            vec = [Fraction(1)]
            for slot, block in enumerate(split.blocks):
                (u, v), _ = factored.factors[order[slot]]
                count = block.parts.count(r)
                for _ in range(count):
                    new = [Fraction(0)] * (len(vec) + 1)
                    for i, c in enumerate(vec):
                        new[i] += c * u
                        new[i + 1] += c * v
                    vec = new
            if len(vec) - 1 != lam.multiplicity(r):
                raise RootlociInternalError("fiber factor degree mismatch")
            forms.append((r, _normalize_vector(vec)))
        points.append(FiberPoint(forms=tuple(forms)))
    return tuple(points)


def classify_point(factored, lam):
    """Singularity label of a factored form as a point of the locus."""
    mu = factored.multiplicity_partition()
    if not splittings(mu, lam):
        raise DomainError("form with multiplicities %s is not on the locus of %s" % (mu, lam))
    return classify_stratum(lam, mu)


def is_smooth(lam):
    """The locus is smooth exactly for partitions with all parts equal."""
    return is_even(lam)


# -- stratification diagram ---------------------------------------------------


@dataclass(frozen=True)
class DiagramEdge:
    upper: Partition
    lower: Partition
    label: object  # StratumLabel
    dashed: bool
    text: str


@dataclass(frozen=True)
class DiagramData:
    d: int
    nodes: tuple  # (Partition, dimension), rows by number of parts
    edges: tuple


def singular_diagram(d):
    """Stratification data for all partitions of d: every proper coarsening
    edge with its singularity label; node dimension = number of parts."""
    from .partitions import all_partitions

    if d < 1:
        raise DomainError("d must be >= 1")
    nodes = tuple((lam, lam.num_parts) for lam in all_partitions(d))
    edges = []
    for lam, _ in nodes:
        for mu in sorted(coarsenings(lam, proper=True), reverse=True):
            label = classify_stratum(lam, mu)
            edges.append(
                DiagramEdge(
                    upper=lam,
                    lower=mu,
                    label=label,
                    dashed=label.nonsingular,
                    text=label.text(),
                )
            )
    return DiagramData(d=d, nodes=nodes, edges=tuple(edges))
