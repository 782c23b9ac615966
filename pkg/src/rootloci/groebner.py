"""Buchberger's algorithm, normal forms, and elimination ideals.

The driver here stays in Python: pair queue, Gebauer-Moeller pruning,
basis bookkeeping.  The inner reduction loop runs in the selected kernel
(compiled when available).  Bases are returned reduced: minimal, tail-
reduced, primitive integer coefficients, positive leading coefficient,
sorted by leading monomial.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush

from . import _kernel
from .errors import DomainError, ExponentOverflow, ResourceLimitExceeded
from .polyring import (
    BlockOrder,
    GrevlexOrder,
    LexOrder,
    Monomial,
    MonomialOrder,
    Poly,
    Var,
)

DEFAULT_MAX_PAIRS = 10**6
DEFAULT_MAX_OPS = 10**7


def _cap(value, env, default):
    if value is not None:
        return value
    raw = os.environ.get(env)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise DomainError("bad integer in %s: %r" % (env, raw)) from None
    return default


@dataclass(frozen=True)
class IdealBasis:
    """A generating set with the order it was computed under."""

    gens: tuple
    order: MonomialOrder
    is_groebner: bool = False


# -- conversion between Poly and kernel form --------------------------------


class _Space:
    """Variable indexing plus packing layout for one computation."""

    def __init__(self, order, width):
        self.order = order
        self.vars = order.variables()
        self.index = {v: i for i, v in enumerate(self.vars)}
        blocks = []
        pos = 0
        for kind, vs in order.blocks():
            blocks.append((kind, tuple(range(pos, pos + len(vs)))))
            pos += len(vs)
        self.layout = _kernel.Layout(len(self.vars), blocks, width=width)
        self.ctx = _kernel.make_context(self.layout)

    def to_terms(self, p):
        """Clear denominators and pack; exact up to a positive scalar."""
        den = 1
        for c in p.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        terms = []
        nvars = len(self.vars)
        for m, c in p.terms.items():
            exps = [0] * nvars
            for v, e in m.pairs:
                i = self.index.get(v)
                if i is None:
                    raise DomainError(
                        "variable %s is not covered by the monomial order" % (v,)
                    )
                exps[i] = e
            terms.append((self.layout.pack(exps), int(c * den)))
        return terms, den

    def to_poly(self, terms, scale=1):
        out = {}
        for e, c in terms:
            exps = self.layout.unpack(e)
            m = Monomial(
                [(self.vars[i], ex) for i, ex in enumerate(exps) if ex]
            )
            out[m] = c if scale == 1 else c * scale
        return Poly(out)


def _width_for(polys):
    worst = 0
    for p in polys:
        for m in p.terms:
            for _, e in m.pairs:
                worst = max(worst, e)
    return 1 if worst <= 31 else 2


def canonical_weight(v):
    """The grading that makes the chart generators of the incidence scheme
    homogeneous: coefficient coordinate W(r,t) weighs t, ambient coordinate
    Z(j) weighs j."""
    if v.kind == "W":
        return v.b
    if v.kind == "Z":
        return v.a
    return 1


def _detect_weights(polys):
    """Use weighted-degree pair selection when every generator is
    homogeneous under the canonical grading.

    Selection strategy never affects correctness, but for these
    quasi-homogeneous ideals processing S-pairs by weighted degree keeps
    intermediate bases and coefficients dramatically smaller than plain
    total degree does.
    """
    for p in polys:
        if not isinstance(p.weighted_degree(canonical_weight), int):
            return None
    return canonical_weight


# -- public operations -------------------------------------------------------


def s_polynomial(f, g, order):
    """S-polynomial of f and g, primitive-normalized (exact up to scale)."""
    if f.is_zero() or g.is_zero():
        raise DomainError("s-polynomial of a zero polynomial")
    space = _Space(order, _width_for([f, g]))
    ft, _ = space.to_terms(f)
    gt, _ = space.to_terms(g)
    ft = _kernel.sort_terms(space.ctx, ft)
    gt = _kernel.sort_terms(space.ctx, gt)
    s = _kernel.spoly_terms(space.ctx, ft, gt)
    return space.to_poly(_kernel.normalize_terms(space.ctx, s))


def normal_form(p, basis, *, max_ops=None):
    """Remainder of multivariate division of p by basis.gens (in order).

    No term of the result is divisible by any generator's leading
    monomial, and p - result lies in the ideal generated by the basis.
    """
    if not isinstance(basis, IdealBasis):
        raise DomainError("normal_form expects an IdealBasis")
    max_ops = _cap(max_ops, "ROOTLOCI_MAX_OPS", DEFAULT_MAX_OPS)
    gens = [g for g in basis.gens if not g.is_zero()]
    if p.is_zero() or not gens:
        return p
    try:
        return _normal_form_in(p, gens, basis.order, 1, max_ops)
    except ExponentOverflow:
        return _normal_form_in(p, gens, basis.order, 2, max_ops)


def _normal_form_in(p, gens, order, width, max_ops):
    space = _Space(order, width)
    kpolys = []
    leads = []
    lcoeffs = []
    for g in gens:
        terms, _ = space.to_terms(g)
        terms = _kernel.sort_terms(space.ctx, terms)
        kpolys.append(terms)
        leads.append(terms[0][0])
        lcoeffs.append(terms[0][1])
    pterms, pden = space.to_terms(p)
    rem, _, scale = _kernel.reduce_terms(
        space.ctx, pterms, kpolys, leads, lcoeffs, -1, max_ops
    )
    # reduce_terms returns scale * (p*pden - combination); undo both factors
    return space.to_poly(rem, Fraction(1, pden) / scale)


def buchberger(gens, order, *, max_pairs=None, max_ops=None, select_weights=None):
    """Reduced Groebner basis of the ideal generated by `gens`.

    `select_weights` (a Var -> weight function or mapping) only biases the
    S-pair processing priority; by default the canonical grading is used
    when all generators are homogeneous for it.  Raises
    ResourceLimitExceeded when the configured caps are hit; never returns a
    partial basis.
    """
    max_pairs = _cap(max_pairs, "ROOTLOCI_MAX_PAIRS", DEFAULT_MAX_PAIRS)
    max_ops = _cap(max_ops, "ROOTLOCI_MAX_OPS", DEFAULT_MAX_OPS)
    polys = [g for g in gens if not g.is_zero()]
    if not polys:
        return IdealBasis((), order, True)
    if select_weights is None:
        select_weights = _detect_weights(polys)
    width = _width_for(polys)
    try:
        result = _buchberger_in(polys, order, width, max_pairs, max_ops, select_weights)
    except ExponentOverflow:
        if width == 2:
            raise
        result = _buchberger_in(polys, order, 2, max_pairs, max_ops, select_weights)
    return IdealBasis(tuple(result), order, True)


def _buchberger_in(polys, order, width, max_pairs, max_ops, select_weights):
    space = _Space(order, width)
    ctx = space.ctx
    layout = space.layout

    if select_weights is None:
        pair_degree = layout.degree
    else:
        getter = (
            select_weights.get
            if hasattr(select_weights, "get")
            else select_weights
        )
        wvec = [getter(v) for v in space.vars]

        def pair_degree(packed):
            return sum(w * e for w, e in zip(wvec, layout.unpack(packed)))

    kpolys = []
    leads = []
    lcoeffs = []
    lkeys = []

    pairs = {}  # (i, j) i<j -> packed lcm
    pair_heap = []  # (deg(lcm), key(lcm), i, j) lazy entries

    ops_left = [max_ops]

    def reduce_against(terms, skip=-1):
        rem, ops, _ = _kernel.reduce_terms(
            ctx, terms, kpolys, leads, lcoeffs, skip, ops_left[0]
        )
        ops_left[0] -= ops
        if ops_left[0] <= 0:
            raise ResourceLimitExceeded(
                "term operation cap exhausted in buchberger", ops=max_ops
            )
        return rem

    def add_element(terms):
        """Append a fully reduced element and install its pairs
        (Gebauer-Moeller update: M, F and B rules plus the product
        criterion)."""
        t = len(kpolys)
        kpolys.append(terms)
        lead_t = terms[0][0]
        leads.append(lead_t)
        lcoeffs.append(terms[0][1])
        lkeys.append(ctx.key_of(lead_t))

        cand = {i: layout.lcm(leads[i], lead_t) for i in range(t)}
        # M rule: drop (i,t) when another lcm(j,t) strictly divides lcm(i,t)
        survivors = []
        for i, l in cand.items():
            dominated = False
            for lj in cand.values():
                if lj != l and layout.divides(lj, l):
                    dominated = True
                    break
            if not dominated:
                survivors.append(i)
        # F rule + product criterion: one representative per lcm value,
        # none at all when some pair in the class has coprime leads
        by_lcm = {}
        for i in survivors:
            by_lcm.setdefault(cand[i], []).append(i)
        # B rule: prune old pairs made redundant by the new lead
        for (i, j), l in list(pairs.items()):
            if (
                layout.divides(lead_t, l)
                and layout.lcm(leads[i], lead_t) != l
                and layout.lcm(leads[j], lead_t) != l
            ):
                del pairs[(i, j)]
        for l in sorted(by_lcm):
            group = by_lcm[l]
            if any(leads[i] + lead_t == l for i in group):
                continue
            i = min(group)
            pairs[(i, t)] = l
            heappush(pair_heap, (pair_degree(l), ctx.key_of(l), i, t))

    # build the starting basis, interreducing as we go
    for p in polys:
        terms, _ = space.to_terms(p)
        terms = _kernel.normalize_terms(ctx, terms)
        rem = reduce_against(terms)
        rem = _kernel.normalize_terms(ctx, rem)
        if rem:
            add_element(rem)

    processed = 0
    while pair_heap:
        _, _, i, j = heappop(pair_heap)
        if pairs.pop((i, j), None) is None:
            continue  # pruned by the B rule
        processed += 1
        if processed > max_pairs:
            raise ResourceLimitExceeded(
                "s-pair cap exhausted in buchberger", pairs=processed
            )
        s = _kernel.spoly_terms(ctx, kpolys[i], kpolys[j])
        if not s:
            continue
        rem = reduce_against(s)
        rem = _kernel.normalize_terms(ctx, rem)
        if rem:
            add_element(rem)

    # minimalize: drop elements whose lead is divisible by another lead
    by_key = sorted(range(len(kpolys)), key=lambda i: lkeys[i])
    kept = []
    for i in by_key:
        if not any(layout.divides(leads[k], leads[i]) for k in kept):
            kept.append(i)
    # tail-reduce each survivor against the others
    final = []
    kept_polys = [kpolys[i] for i in kept]
    kept_leads = [leads[i] for i in kept]
    kept_coeffs = [lcoeffs[i] for i in kept]
    for pos in range(len(kept)):
        rem, ops, _ = _kernel.reduce_terms(
            ctx, kept_polys[pos], kept_polys, kept_leads, kept_coeffs, pos, max_ops
        )
        final.append(_kernel.normalize_terms(ctx, rem))
    final.sort(key=lambda terms: ctx.key_of(terms[0][0]))
    return [space.to_poly(terms) for terms in final]


def eliminate(
    gens,
    drop_vars,
    *,
    style="block-grevlex",
    max_pairs=None,
    max_ops=None,
    select_weights=None,
):
    """Generators of the ideal of `gens` intersected with the subring of
    variables not in `drop_vars`.

    Computed with an elimination order putting the dropped variables in a
    leading block (block-grevlex by default, pure lex via style="lex") and
    keeping the basis elements free of dropped variables.
    """
    drop = tuple(sorted(set(drop_vars)))
    seen = set(drop)
    for g in gens:
        seen.update(g.variables())
    keep = tuple(sorted(seen - set(drop)))
    if style == "block-grevlex":
        if drop:
            order = BlockOrder(GrevlexOrder(drop), GrevlexOrder(keep))
        else:
            order = GrevlexOrder(keep)
    elif style == "lex":
        order = LexOrder(drop + keep)
    else:
        raise DomainError("unknown elimination style %r" % (style,))
    basis = buchberger(
        gens,
        order,
        max_pairs=max_pairs,
        max_ops=max_ops,
        select_weights=select_weights,
    )
    dropset = set(drop)
    return tuple(g for g in basis.gens if not (g.variables() & dropset))
