"""Property suites behind the `check` CLI subcommand.

Each suite returns a list of CheckResult records; a suite passes when all
records do.  The suites are deterministic given their seed arguments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .charts import (
    chart_generators,
    gluing_minor_consistency,
    jacobian_submatrix_check,
    minor_identity_check,
    row_nonvanishing_sample,
)
from .errors import ResourceLimitExceeded
from .expansion import (
    ChartIndex,
    all_chart_indices,
    product_expansion_oracle,
    theta_polys,
)
from .groebner import IdealBasis, buchberger, eliminate, normal_form, s_polynomial
from .loci import (
    BinaryForm,
    FactoredForm,
    RootlociInternalError,
    evaluate_at_form,
    fiber_points,
    ideal_of_X,
    is_member,
    is_smooth,
    multiplicity_partition,
)
from .partitions import (
    all_partitions,
    classify_stratum,
    coarsenings,
    is_even,
    splittings,
)
from .polyring import (
    NOT_HOMOGENEOUS,
    GrevlexOrder,
    Monomial,
    Poly,
    Var,
)

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _result(suite, name, passed, detail=""):
    return CheckResult(suite=suite, name=name, passed=bool(passed), detail=detail)


# -- partitions ---------------------------------------------------------------


def _brute_force_splittings(mu, lam):
    """Independent enumerator: assign each labeled part of lam to a slot of
    mu (with capacity pruning), then deduplicate by block multisets."""
    parts = lam.parts
    c = mu.num_parts
    found = set()

    def rec(i, capacities, blocks):
        if i == len(parts):
            if all(cap == 0 for cap in capacities):
                found.add(tuple(tuple(sorted(b, reverse=True)) for b in blocks))
            return
        for k in range(c):
            if capacities[k] >= parts[i]:
                capacities[k] -= parts[i]
                blocks[k].append(parts[i])
                rec(i + 1, capacities, blocks)
                blocks[k].pop()
                capacities[k] += parts[i]

    rec(0, list(mu.parts), [[] for _ in range(c)])
    return found


def check_partitions(dmax=8):
    out = []
    suite = "partitions"
    exhaustive_ok = True
    self_ok = True
    smooth_ok = True
    codim_ok = True
    detail = []
    for d in range(1, dmax + 1):
        for lam in all_partitions(d):
            label_self = classify_stratum(lam, lam)
            if not label_self.nonsingular or label_self.fiber_count != 1:
                self_ok = False
                detail.append("self stratum of %s not nonsingular" % (lam,))
            proper = coarsenings(lam, proper=True)
            all_nonsingular = True
            has_codim1_singular = False
            for mu in proper:
                splits = splittings(mu, lam)
                expect = _brute_force_splittings(mu, lam)
                got = set(
                    tuple(b.parts for b in s.blocks) for s in splits
                )
                if got != expect or len(splits) != len(set(splits)):
                    exhaustive_ok = False
                    detail.append("splittings mismatch for %s into %s" % (mu, lam))
                for s in splits:
                    if not s.is_valid_for(lam):
                        exhaustive_ok = False
                        detail.append("invalid splitting for %s into %s" % (mu, lam))
                label = classify_stratum(lam, mu)
                if not label.nonsingular:
                    all_nonsingular = False
                    if mu.num_parts == lam.num_parts - 1:
                        has_codim1_singular = True
            if is_even(lam) != all_nonsingular:
                smooth_ok = False
                detail.append("evenness/smoothness mismatch at %s" % (lam,))
            if not is_even(lam) and not has_codim1_singular:
                codim_ok = False
                detail.append("no codimension-1 singular stratum for %s" % (lam,))
    out.append(_result(suite, "splittings vs brute force (d<=%d)" % dmax, exhaustive_ok,
                       "; ".join(detail[:3])))
    out.append(_result(suite, "own stratum nonsingular", self_ok))
    out.append(_result(suite, "smooth iff even", smooth_ok))
    out.append(_result(suite, "singular locus in codimension 1", codim_ok))
    return out


# -- coefficient polynomials --------------------------------------------------


def check_theta(dmax=7):
    out = []
    suite = "theta"
    oracle_ok = True
    ends_ok = True
    weight_ok = True
    multideg_ok = True
    symmetry_ok = True
    detail = []
    for d in range(1, dmax + 1):
        for lam in all_partitions(d):
            thetas = theta_polys(lam)
            oracle = product_expansion_oracle(lam)
            if list(thetas) != list(oracle):
                oracle_ok = False
                detail.append("oracle mismatch at %s" % (lam,))
            first = Poly.monomial(
                Monomial([(Var.w(r, 0), r) for r in lam.active_sizes()])
            )
            last = Poly.monomial(
                Monomial(
                    [(Var.w(r, lam.multiplicity(r)), r) for r in lam.active_sizes()]
                )
            )
            if thetas[0] != first or thetas[d] != last:
                ends_ok = False
                detail.append("end coefficients wrong at %s" % (lam,))
            for j, theta in enumerate(thetas):
                if theta.weighted_degree(lambda v: v.b) != j:
                    weight_ok = False
                    detail.append("weighted degree of index %d at %s" % (j, lam))
                for r in lam.active_sizes():
                    block = lambda v, rr=r: (
                        1 if v.kind == "W" and v.a == rr else 0
                    )
                    if theta.weighted_degree(block) != r:
                        multideg_ok = False
                        detail.append("block degree %d at %s" % (r, lam))
            flip = {}
            for r in lam.active_sizes():
                e_r = lam.multiplicity(r)
                for t in range(e_r + 1):
                    flip[Var.w(r, t)] = Poly.variable(Var.w(r, e_r - t))
            for j, theta in enumerate(thetas):
                if theta.substitute(flip) != thetas[d - j]:
                    symmetry_ok = False
                    detail.append("reversal symmetry at %s index %d" % (lam, j))
    out.append(_result(suite, "expansion oracle equality (d<=%d)" % dmax, oracle_ok,
                       "; ".join(detail[:3])))
    out.append(_result(suite, "extreme coefficients are pure powers", ends_ok))
    out.append(_result(suite, "weighted homogeneity", weight_ok))
    out.append(_result(suite, "degree r in each coefficient block", multideg_ok))
    out.append(_result(suite, "coefficient reversal symmetry", symmetry_ok))
    return out


# -- charts -------------------------------------------------------------------


def check_gamma(dmax=6, sample_dmax=5, trials=1000, seed=DEFAULT_SEED, bound=10):
    out = []
    suite = "gamma"
    minor_ok = True
    jac_ok = True
    detail = []
    for d in range(1, dmax + 1):
        for lam in all_partitions(d):
            for alpha in all_chart_indices(lam):
                if not minor_identity_check(lam, alpha):
                    minor_ok = False
                    detail.append("minor identity %s %s" % (lam, alpha))
                if not jacobian_submatrix_check(lam, alpha):
                    jac_ok = False
                    detail.append("jacobian %s %s" % (lam, alpha))
    out.append(_result(suite, "2x2 minor identity, all charts (d<=%d)" % dmax,
                       minor_ok, "; ".join(detail[:3])))
    out.append(_result(suite, "jacobian is a scaled identity, all charts", jac_ok))

    sample_ok = True
    fail = ""
    counter = 0
    for d in range(1, sample_dmax + 1):
        for lam in all_partitions(d):
            for alpha in all_chart_indices(lam):
                counter += 1
                if not row_nonvanishing_sample(
                    lam, alpha, trials, seed=seed + counter, bound=bound
                ):
                    sample_ok = False
                    fail = "counterexample at %s %s seed %d" % (lam, alpha, seed + counter)
    out.append(_result(
        suite,
        "coefficient row never vanishes (%d points/chart, d<=%d)" % (trials, sample_dmax),
        sample_ok, fail,
    ))

    glue_ok = True
    fail = ""
    rng = random.Random(seed)
    for d in range(1, sample_dmax + 1):
        for lam in all_partitions(d):
            charts = list(all_chart_indices(lam))
            for _ in range(min(4, len(charts))):
                a1, a2 = rng.choice(charts), rng.choice(charts)
                if not gluing_minor_consistency(lam, a1, a2, 10, seed=rng.randrange(10**6), bound=bound):
                    glue_ok = False
                    fail = "gluing mismatch %s %s %s" % (lam, a1, a2)
    out.append(_result(suite, "minor vanishing agrees between charts", glue_ok, fail))

    image_ok = True
    fail = ""
    for d in range(1, sample_dmax + 1):
        for lam in all_partitions(d):
            for trial in range(5):
                point, alpha = _random_incidence_point(lam, rng, bound)
                values = [
                    g.evaluate(point) for g in chart_generators(lam, alpha).gens
                ]
                if any(v != 0 for v in values):
                    image_ok = False
                    fail = "generators nonzero on image point of %s" % (lam,)
    out.append(_result(suite, "generators vanish on factored points", image_ok, fail))
    return out


def _random_incidence_point(lam, rng, bound):
    """A random rational point of the incidence scheme in a chart that
    contains it: choose integer factor coefficients, expand the product,
    scale into the chart of the first nonzero coordinates."""
    d = lam.d
    coeff = {}
    for r in lam.active_sizes():
        vec = [rng.randint(-bound, bound) for _ in range(lam.multiplicity(r) + 1)]
        if all(v == 0 for v in vec):
            vec[0] = 1
        coeff[r] = vec
    ambient = [1]
    for r in lam.active_sizes():
        for _ in range(r):
            new = [0] * (len(ambient) + len(coeff[r]) - 1)
            for i, a in enumerate(ambient):
                for k, b in enumerate(coeff[r]):
                    new[i + k] += a * b
            ambient = new
    entries = [next(j for j in range(d + 1) if ambient[j] != 0)]
    for r in range(1, d + 1):
        if lam.multiplicity(r) == 0:
            entries.append(0)
        else:
            entries.append(next(t for t, v in enumerate(coeff[r]) if v != 0))
    alpha = ChartIndex(tuple(entries)).validate(lam)
    point = {}
    a0 = entries[0]
    for j in range(d + 1):
        if j != a0:
            point[Var.z(j)] = Fraction(ambient[j], ambient[a0])
    for r in lam.active_sizes():
        pin = coeff[r][entries[r]]
        for t in range(lam.multiplicity(r) + 1):
            point[Var.w(r, t)] = Fraction(coeff[r][t], pin)
    return point, alpha


# -- groebner engine ----------------------------------------------------------


def _random_poly(rng, variables, max_terms, max_deg, coeff_bound):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        pairs = []
        budget = max_deg
        for v in variables:
            e = rng.randint(0, budget)
            if e:
                pairs.append((v, e))
                budget -= e
        c = 0
        while c == 0:
            c = rng.randint(-coeff_bound, coeff_bound)
        m = Monomial(pairs)
        terms[m] = terms.get(m, 0) + c
    return Poly(terms)


def check_groebner(seed=DEFAULT_SEED, instances=50):
    out = []
    suite = "groebner"
    rng = random.Random(seed)
    cert_ok = True
    idem_ok = True
    member_ok = True
    elim_ok = True
    detail = []
    for case in range(instances):
        nw = rng.randint(1, 4)
        nz = rng.randint(2, 3)
        wv = [Var.w(1, t) for t in range(1, nw + 1)]
        zv = [Var.z(j) for j in range(1, nz + 1)]
        images = [
            _random_poly(rng, wv, max_terms=3, max_deg=4, coeff_bound=4)
            for _ in zv
        ]
        gens = [Poly.variable(z) - f for z, f in zip(zv, images)]
        try:
            basis = buchberger(gens, GrevlexOrder(tuple(wv + zv)))
        except ResourceLimitExceeded as exc:
            cert_ok = False
            detail.append("case %d capped: %s" % (case, exc))
            continue
        # S-polynomial certificates
        for i in range(len(basis.gens)):
            for j in range(i + 1, len(basis.gens)):
                s = s_polynomial(basis.gens[i], basis.gens[j], basis.order)
                if not normal_form(s, basis).is_zero():
                    cert_ok = False
                    detail.append("certificate fails in case %d" % (case,))
        # idempotence
        again = buchberger(basis.gens, basis.order)
        if set(again.gens) != set(basis.gens):
            idem_ok = False
            detail.append("not idempotent in case %d" % (case,))
        # membership soundness
        for g in gens:
            if not normal_form(g, basis).is_zero():
                member_ok = False
                detail.append("input generator not in basis ideal, case %d" % (case,))
        # elimination vs substitution
        subst = dict(zip(zv, images))
        elim = eliminate(gens, wv)
        for q in elim:
            if not q.substitute(subst).is_zero():
                elim_ok = False
                detail.append("eliminated generator not in kernel, case %d" % (case,))
        # random ideal elements also vanish under substitution
        for _ in range(3):
            if not elim:
                break
            q = Poly.zero()
            for g in elim:
                q = q + _random_poly(rng, zv, 2, 2, 3) * g
            if not q.substitute(subst).is_zero():
                elim_ok = False
                detail.append("ideal combination not in kernel, case %d" % (case,))
        # polynomials outside the ideal must not normal-form to zero
        probe = _random_poly(rng, zv, 2, 3, 4)
        if not probe.substitute(subst).is_zero():
            zbasis = buchberger(elim, GrevlexOrder(tuple(zv))) if elim else None
            if zbasis and normal_form(probe, zbasis).is_zero():
                elim_ok = False
                detail.append("non-member reduced to zero, case %d" % (case,))
    out.append(_result(suite, "s-polynomial certificates (%d ideals)" % instances,
                       cert_ok, "; ".join(detail[:3])))
    out.append(_result(suite, "idempotence of the reduced basis", idem_ok))
    out.append(_result(suite, "input generators reduce to zero", member_ok))
    out.append(_result(suite, "elimination agrees with substitution", elim_ok))
    return out


# -- loci ---------------------------------------------------------------------


def _random_factored(lam, rng, bound=9):
    """A factored form with the exact multiplicities of lam and pairwise
    non-proportional integer linear factors."""
    factors = []
    seen = set()
    for m in lam.parts:
        while True:
            u = rng.randint(-bound, bound)
            v = rng.randint(-bound, bound)
            if u == 0 and v == 0:
                continue
            from math import gcd as _g

            g = _g(u, v)
            key = (u // g, v // g)
            if key[0] < 0 or (key[0] == 0 and key[1] < 0):
                key = (-key[0], -key[1])
            if key in seen:
                continue
            seen.add(key)
            factors.append(((Fraction(u), Fraction(v)), m))
            break
    return FactoredForm(tuple(factors))


def check_crl(dmax=6, forms=100, seed=DEFAULT_SEED, cache_dir=None, max_pairs=None, max_ops=None):
    out = []
    suite = "crl"
    rng = random.Random(seed)
    vanish_ok = True
    nonvanish_ok = True
    grading_ok = True
    fiber_ok = True
    consistency_ok = True
    roundtrip_ok = True
    capped = []
    detail = []
    weights = {Var.z(j): j for j in range(0, dmax + 1)}
    for d in range(1, dmax + 1):
        for lam in all_partitions(d):
            try:
                gens = ideal_of_X(
                    lam, cache_dir=cache_dir, max_pairs=max_pairs, max_ops=max_ops
                )
            except ResourceLimitExceeded as exc:
                capped.append("%s (%s)" % (lam, exc))
                continue
            for g in gens:
                if not isinstance(g.weighted_degree(weights), int):
                    grading_ok = False
                    detail.append("non-homogeneous generator for %s" % (lam,))
            trivial = lam.num_parts == d
            for k in range(forms):
                factored = _random_factored(lam, rng)
                form = factored.expand()
                if any(evaluate_at_form(g, form) != 0 for g in gens):
                    vanish_ok = False
                    detail.append("generator nonzero on factored form, %s" % (lam,))
                try:
                    member = is_member(form, lam, ideal=gens)
                except RootlociInternalError as exc:
                    consistency_ok = False
                    detail.append(str(exc))
                    member = True
                if not member:
                    vanish_ok = False
                    detail.append("factored form not a member of %s" % (lam,))
                if multiplicity_partition(form) != factored.multiplicity_partition():
                    roundtrip_ok = False
                    detail.append("multiplicity roundtrip failed for %s" % (lam,))
            if not trivial:
                produced = 0
                while produced < forms:
                    coeffs = [rng.randint(-20, 20) for _ in range(d + 1)]
                    if all(c == 0 for c in coeffs):
                        continue
                    form = BinaryForm(coeffs)
                    if multiplicity_partition(form).num_parts != d:
                        continue  # not generic; resample
                    produced += 1
                    if all(evaluate_at_form(g, form) == 0 for g in gens):
                        nonvanish_ok = False
                        detail.append("generic form on the locus of %s" % (lam,))
                    try:
                        is_member(form, lam, ideal=gens)
                    except RootlociInternalError as exc:
                        consistency_ok = False
                        detail.append(str(exc))
            # fibers on exhaustive coarsening inputs
            for mu in sorted(coarsenings(lam, proper=False), reverse=True):
                factored = FactoredForm(
                    tuple(((Fraction(1), Fraction(k + 1)), m)
                          for k, m in enumerate(mu.parts))
                )
                pts = fiber_points(factored, lam)
                if len(pts) != len(splittings(mu, lam)):
                    fiber_ok = False
                    detail.append("fiber count mismatch %s into %s" % (mu, lam))
                target = factored.expand()
                want = _normalized(target)
                for pt in pts:
                    if pt.expand_product() != want:
                        fiber_ok = False
                        detail.append("fiber product mismatch %s into %s" % (mu, lam))
    out.append(_result(suite, "generators vanish on factored forms (d<=%d)" % dmax,
                       vanish_ok, "; ".join(detail[:3])))
    out.append(_result(suite, "generators separate generic forms", nonvanish_ok))
    out.append(_result(suite, "generators weighted-homogeneous", grading_ok))
    out.append(_result(suite, "fibers match splittings exactly", fiber_ok))
    out.append(_result(suite, "combinatorial and ideal membership agree", consistency_ok))
    out.append(_result(suite, "multiplicities survive expansion", roundtrip_ok))
    if capped:
        out.append(_result(suite, "eliminations within resource caps", False,
                           "capped: " + ", ".join(capped)))
    return out


def _normalized(form):
    from .loci import _normalize_vector

    return _normalize_vector(form.coeffs)


# -- umbrella -----------------------------------------------------------------


SUITES = {
    "partitions": check_partitions,
    "theta": check_theta,
    "gamma": check_gamma,
    "groebner": check_groebner,
    "crl": check_crl,
}


def run_suite(name, **kwargs):
    if name == "all":
        results = []
        dmax = kwargs.pop("dmax", None)
        seed = kwargs.pop("seed", None) or DEFAULT_SEED
        results += check_partitions(dmax=dmax or 8)
        results += check_theta(dmax=min(dmax or 7, 7))
        results += check_gamma(dmax=dmax or 6, sample_dmax=min(dmax or 5, 5),
                               trials=kwargs.get("trials") or 200, seed=seed)
        results += check_groebner(seed=seed, instances=kwargs.get("instances") or 25)
        results += check_crl(dmax=dmax or 6, forms=kwargs.get("forms") or 25, seed=seed,
                             cache_dir=kwargs.get("cache_dir"))
        return results
    if name not in SUITES:
        from .errors import DomainError

        raise DomainError("unknown check suite %r" % (name,))
    fn = SUITES[name]
    import inspect

    accepted = set(inspect.signature(fn).parameters)
    return fn(**{k: v for k, v in kwargs.items() if k in accepted and v is not None})
