# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled reduction kernel.

Same data model and semantics as pykernel (packed-integer monomials with
guard-bit arithmetic, fraction-free reduction with content strips); the
win is compiled control flow in the division loop, which dominates
Groebner runs.  Coefficients stay arbitrary-precision Python ints.
"""

import math
from fractions import Fraction
from heapq import heapify, heappop, heappush

from ..errors import ExponentOverflow, ResourceLimitExceeded

IMPLEMENTATION = "cython"

cdef int _STRIP_EVERY = 128


cdef class Context:
    cdef public object layout
    cdef dict _keys
    cdef public object guard_mask

    def __init__(self, layout):
        self.layout = layout
        self._keys = {}
        self.guard_mask = layout.guard_mask

    cpdef object key_of(self, object e):
        k = self._keys.get(e)
        if k is None:
            k = self.layout.key(e)
            self._keys[e] = k
        return k


def make_context(layout):
    return Context(layout)


def sort_terms(Context ctx, terms):
    return sorted(terms, key=lambda ec: ctx.key_of(ec[0]), reverse=True)


def normalize_terms(Context ctx, terms):
    """Primitive integer content, positive leading coefficient, sorted
    descending.  Empty input stays empty."""
    cdef dict merged = {}
    for e, c in terms:
        nc = merged.get(e, 0) + c
        if nc:
            merged[e] = nc
        else:
            del merged[e]
    if not merged:
        return []
    out = sorted(merged.items(), key=lambda ec: ctx.key_of(ec[0]), reverse=True)
    content = 0
    for _, c in out:
        content = math.gcd(content, c)
    if out[0][1] < 0:
        content = -content
    if content != 1:
        out = [(e, c // content) for e, c in out]
    return out


def spoly_terms(Context ctx, f, g):
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
    H = ctx.guard_mask
    cdef dict out = {}
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


def reduce_terms(Context ctx, terms, list kpolys, list leads, list lcoeffs,
                 int skip=-1, max_ops=None):
    """Full normal-form reduction; see the pure-Python twin for the
    contract.  Returns (remainder, ops, scale)."""
    cdef Py_ssize_t nb = len(leads)
    cdef Py_ssize_t gi, i, idx, glen
    cdef long long ops = 0
    cdef long long ops_cap = -1
    cdef int eliminations = 0
    if max_ops is not None:
        ops_cap = max_ops

    H = ctx.guard_mask
    cdef dict pool = {}
    for e, c in terms:
        nc = pool.get(e, 0) + c
        if nc:
            pool[e] = nc
        else:
            del pool[e]
    heap = [(-ctx.key_of(e), e) for e in pool]
    heapify(heap)

    cdef list rem = []
    scale = Fraction(1)

    while heap:
        e = heappop(heap)[1]
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
        gg = math.gcd(gc, c)
        a = gc // gg
        b = c // gg
        del pool[e]
        if a != 1:
            for k in pool:
                pool[k] = pool[k] * a
            if rem:
                rem = [(re, rc * a) for re, rc in rem]
            scale = scale * a
        off = e - leads[gi]
        glen = len(g)
        for idx in range(1, glen):
            ge, gcf = g[idx]
            ne = ge + off
            if ne & H:
                raise ExponentOverflow("monomial exponent overflow during reduction")
            old = pool.get(ne)
            if old is None:
                pool[ne] = -b * gcf
                heappush(heap, (-ctx.key_of(ne), ne))
            else:
                nc = old - b * gcf
                if nc:
                    pool[ne] = nc
                else:
                    del pool[ne]
        ops += glen
        if ops_cap >= 0 and ops > ops_cap:
            raise ResourceLimitExceeded(
                "reduction operation budget exhausted", ops=int(ops)
            )
        eliminations += 1
        if eliminations % _STRIP_EVERY == 0 and (pool or rem):
            content = 0
            for c2 in pool.values():
                content = math.gcd(content, c2)
                if content == 1:
                    break
            if content != 1:
                for _, rc in rem:
                    content = math.gcd(content, rc)
                    if content == 1:
                        break
            if content > 1:
                for k in pool:
                    pool[k] = pool[k] // content
                rem = [(re, rc // content) for re, rc in rem]
                scale = scale / content

    rem.sort(key=lambda ec: ctx.key_of(ec[0]), reverse=True)
    return rem, int(ops), scale
