"""Pure-Python reduction kernel.

Polynomials cross the kernel boundary as lists of (packed_exponents, int
coefficient) pairs; see layout.py for the packing.  Reduction is
fraction-free: instead of dividing by leading coefficients the whole
polynomial is rescaled by integer factors, with periodic content strips to
keep coefficient growth in check.  The exact accumulated scale is returned
so callers needing a true division remainder can undo it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from heapq import heapify, heappop, heappush

from ..errors import ExponentOverflow, ResourceLimitExceeded

IMPLEMENTATION = "python"

_STRIP_EVERY = 128


class Context:
    """Per-computation state: the layout plus a monomial key cache."""

    __slots__ = ("layout", "_keys")

    def __init__(self, layout):
        self.layout = layout
        self._keys = {}

    def key_of(self, e):
        k = self._keys.get(e)
        if k is None:
            k = self.layout.key(e)
            self._keys[e] = k
        return k


def make_context(layout):
    return Context(layout)


def sort_terms(ctx, terms):
    key_of = ctx.key_of
    return sorted(terms, key=lambda ec: key_of(ec[0]), reverse=True)


def normalize_terms(ctx, terms):
    """Primitive integer content, positive leading coefficient, sorted
    descending.  Empty input stays empty."""
    merged = {}
    for e, c in terms:
        nc = merged.get(e, 0) + c
        if nc:
            merged[e] = nc
        else:
            del merged[e]
    if not merged:
        return []
    out = sort_terms(ctx, merged.items())
    content = 0
    for _, c in out:
        content = math.gcd(content, c)
    if out[0][1] < 0:
        content = -content
    if content != 1:
        out = [(e, c // content) for e, c in out]
    return out


def spoly_terms(ctx, f, g):
    """S-polynomial, integer-scaled (exact up to a positive scalar)."""
    layout = ctx.layout
    fe, fc = f[0]
    ge, gc = g[0]
    lcm = layout.lcm(fe, ge)
    uf = lcm - fe
    ug = lcm - ge
    gg = math.gcd(fc, gc)
    a = gc // gg
    b = fc // gg
    H = layout.guard_mask
    out = {}
    for e, c in f:
        ne = e + uf
        if ne & H:
            raise ExponentOverflow("monomial exponent overflow in s-polynomial")
        out[ne] = out.get(ne, 0) + a * c
    for e, c in g:
        ne = e + ug
        if ne & H:
            raise ExponentOverflow("monomial exponent overflow in s-polynomial")
        nc = out.get(ne, 0) - b * c
        if nc:
            out[ne] = nc
        else:
            del out[ne]
    return list(out.items())


def reduce_terms(ctx, terms, kpolys, leads, lcoeffs, skip=-1, max_ops=None):
    """Full normal-form reduction of `terms` against the listed reducers.

    Every term of the result is divisible by no reducer lead; reducers are
    tried in list order (deterministic).  Returns (remainder, ops, scale)
    with remainder sorted descending and

        remainder == scale * (input - combination of reducers)

    for a positive rational `scale`.
    """
    layout = ctx.layout
    H = layout.guard_mask
    key_of = ctx.key_of
    gcd = math.gcd

    pool = {}
    for e, c in terms:
        nc = pool.get(e, 0) + c
        if nc:
            pool[e] = nc
        else:
            del pool[e]
    heap = [(-key_of(e), e) for e in pool]
    heapify(heap)

    rem = []
    ops = 0
    scale = Fraction(1)
    eliminations = 0
    nb = len(leads)

    while heap:
        _, e = heappop(heap)
        c = pool.get(e)
        if not c:
            continue
        gi = -1
        for i in range(nb):
            if i == skip:
                continue
            le = leads[i]
            if ((e | H) - le) & H == H:
                gi = i
                break
        if gi < 0:
            del pool[e]
            rem.append((e, c))
            continue

        g = kpolys[gi]
        gc = lcoeffs[gi]
        gg = gcd(gc, c)
        a = gc // gg
        b = c // gg
        del pool[e]
        if a != 1:
            for k in pool:
                pool[k] *= a
            if rem:
                rem = [(re, rc * a) for re, rc in rem]
            scale *= a
        off = e - leads[gi]
        for idx in range(1, len(g)):
            ge, gcf = g[idx]
            ne = ge + off
            if ne & H:
                raise ExponentOverflow(
                    "monomial exponent overflow during reduction"
                )
            old = pool.get(ne)
            if old is None:
                pool[ne] = -b * gcf
                heappush(heap, (-key_of(ne), ne))
            else:
                nc = old - b * gcf
                if nc:
                    pool[ne] = nc
                else:
                    del pool[ne]
        ops += len(g)
        if max_ops is not None and ops > max_ops:
            raise ResourceLimitExceeded(
                "reduction operation budget exhausted", ops=ops
            )
        eliminations += 1
        if eliminations % _STRIP_EVERY == 0 and (pool or rem):
            content = 0
            for c2 in pool.values():
                content = gcd(content, c2)
                if content == 1:
                    break
            if content != 1:
                for _, rc in rem:
                    content = gcd(content, rc)
                    if content == 1:
                        break
            if content > 1:
                for k in pool:
                    pool[k] //= content
                rem = [(re, rc // content) for re, rc in rem]
                scale /= content

    rem.sort(key=lambda ec: key_of(ec[0]), reverse=True)
    return rem, ops, scale
