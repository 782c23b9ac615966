"""Coefficient polynomials of a power product of binary forms.

For a partition lam of d write e_r for the number of parts equal to r and
give the degree-e_r form G_r the coefficients W(r,0..e_r).  Expanding

    prod_r G_r^r  =  sum_j Theta_j(W) * x^(d-j) * y^j

defines d+1 polynomials Theta_0..Theta_d.  theta_polys builds them
combinatorially (multi-exponent enumeration with multinomial weights);
product_expansion_oracle multiplies the forms out symbolically and must
agree term for term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .partitions import Partition
from .polyring import Monomial, Poly, Var

AUX_X = Var.aux("x")
AUX_Y = Var.aux("y")


@dataclass(frozen=True)
class MultiExponent:
    """One exponent pattern W^nu: for each active part size r a row
    (nu_{r,0}, ..., nu_{r,e_r}) summing to r.  The weight sum_t t*nu_{r,t}
    over all rows is the index j the pattern contributes to."""

    rows: tuple  # ((r, (nu_r0, ..., nu_r_er)), ...) ascending in r

    def row(self, r):
        for rr, nu in self.rows:
            if rr == r:
                return nu
        raise DomainError("no row for part size %d" % (r,))

    def weight(self):
        return sum(t * n for _, nu in self.rows for t, n in enumerate(nu))

    def monomial(self):
        pairs = []
        for r, nu in self.rows:
            for t, n in enumerate(nu):
                if n:
                    pairs.append((Var.w(r, t), n))
        return Monomial(pairs)


@dataclass(frozen=True)
class ChartIndex:
    """A multi-index (alpha_0, ..., alpha_d) selecting one affine chart:
    coordinate alpha_0 of the ambient space and coordinate alpha_r of each
    coefficient space are scaled to 1.  Entries for inactive r stay 0;
    alpha_0 ranges over 0..d."""

    entries: tuple

    @classmethod
    def zero(cls, lam):
        return cls((0,) * (lam.d + 1))

    @classmethod
    def from_string(cls, text):
        pieces = [s.strip() for s in text.split(",")]
        try:
            return cls(tuple(int(s) for s in pieces))
        except ValueError:
            raise DomainError("bad chart string %r" % (text,)) from None

    def validate(self, lam):
        d = lam.d
        if len(self.entries) != d + 1:
            raise DomainError(
                "chart index needs %d entries, got %d" % (d + 1, len(self.entries))
            )
        for r, a in enumerate(self.entries):
            cap = d if r == 0 else lam.exponents[r - 1]
            if not 0 <= a <= cap:
                raise DomainError(
                    "chart entry alpha_%d = %d out of range 0..%d" % (r, a, cap)
                )
        return self

    def __str__(self):
        return ",".join(str(a) for a in self.entries)


def all_chart_indices(lam):
    """Every valid chart index for lam, lexicographic order."""
    d = lam.d
    ranges = [range(d + 1)]
    for r in range(1, d + 1):
        ranges.append(range(lam.exponents[r - 1] + 1))

    def rec(i, acc):
        if i > d:
            yield ChartIndex(tuple(acc))
            return
        for a in ranges[i]:
            acc.append(a)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def _compositions(total, slots):
    """All (c_0..c_{slots-1}) of nonnegative ints summing to `total`,
    lexicographically ascending."""
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def multi_exponents(lam, j):
    """The exponent patterns contributing to Theta_j, lexicographic in nu."""
    if not 0 <= j <= lam.d:
        raise DomainError("index j = %d out of range 0..%d" % (j, lam.d))
    active = lam.active_sizes()
    out = []

    def rec(i, weight_so_far, acc):
        if weight_so_far > j:
            return
        if i == len(active):
            if weight_so_far == j:
                out.append(MultiExponent(tuple(acc)))
            return
        r = active[i]
        e_r = lam.exponents[r - 1]
        for nu in _compositions(r, e_r + 1):
            w = sum(t * n for t, n in enumerate(nu))
            acc.append((r, nu))
            rec(i + 1, weight_so_far + w, acc)
            acc.pop()

    rec(0, 0, [])
    return tuple(out)


def beta(nu):
    """Number of ways the expansion produces the monomial W^nu: the product
    over rows of the multinomial r! / (nu_{r,0}! * ... * nu_{r,e_r}!)."""
    result = 1
    for r, row in nu.rows:
        if sum(row) != r:
            raise DomainError("row for part size %d must sum to %d" % (r, r))
        value = math.factorial(r)
        for n in row:
            value //= math.factorial(n)
        result *= value
    return result


@lru_cache(maxsize=None)
def _theta_cached(parts):
    lam = Partition(parts)
    polys = []
    for j in range(lam.d + 1):
        terms = {}
        for nu in multi_exponents(lam, j):
            terms[nu.monomial()] = beta(nu)
        polys.append(Poly(terms))
    return tuple(polys)


def theta_polys(lam):
    """Theta_0..Theta_d for the given partition."""
    return _theta_cached(lam.parts)


def theta_chart(lam, alpha, j):
    """Theta_j restricted to the chart: W(r, alpha_r) set to 1 for every
    active r; the other coefficients stay as coordinates."""
    alpha.validate(lam)
    if not 0 <= j <= lam.d:
        raise DomainError("index j = %d out of range 0..%d" % (j, lam.d))
    theta = theta_polys(lam)[j]
    ones = {
        Var.w(r, alpha.entries[r]): 1
        for r in lam.active_sizes()
    }
    return theta.substitute(ones)


def product_expansion_oracle(lam):
    """Coefficients of x^(d-j) y^j in the fully expanded symbolic product.

    Brute-force path, independent of the multi-exponent enumeration: build
    each form sum_t W(r,t) x^(e_r - t) y^t, raise to the r-th power,
    multiply everything and collect by (x,y)-exponent.
    """
    x = Poly.variable(AUX_X)
    y = Poly.variable(AUX_Y)
    product = Poly.one()
    for r in lam.active_sizes():
        e_r = lam.exponents[r - 1]
        form = Poly.zero()
        for t in range(e_r + 1):
            form = form + Poly.variable(Var.w(r, t)) * x ** (e_r - t) * y**t
        product = product * form**r
    d = lam.d
    buckets = [{} for _ in range(d + 1)]
    for m, c in product.terms.items():
        ex = m.exponent(AUX_X)
        ey = m.exponent(AUX_Y)
        if ex + ey != d:
            raise DomainError("expansion produced unexpected (x,y)-degree")
        stripped = Monomial(
            [(v, e) for v, e in m.pairs if v != AUX_X and v != AUX_Y]
        )
        buckets[ey][stripped] = c
    return tuple(Poly(b) for b in buckets)
