"""Chart-local data of the incidence scheme: the 2x(d+1) matrix, its
generator sequence, and the symbolic identities it satisfies.

On the chart selected by a multi-index alpha the incidence scheme of
(form, factor tuple) pairs is cut out by the d polynomials

    theta_alpha0 * z_j - theta_j          (j != alpha_0)

whose 2x2-minor structure, Jacobian shape, and row non-vanishing are
checked here exactly (or by seeded sampling where the statement is about
all closed points).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DomainError
from .expansion import ChartIndex, theta_chart, theta_polys
from .polyring import Poly, Var


@dataclass(frozen=True)
class ChartMatrix:
    """Top row: the coefficient polynomials restricted to the chart;
    bottom row: the ambient chart coordinates with 1 in slot alpha_0."""

    alpha: ChartIndex
    top_row: tuple
    bottom_row: tuple

    def minor(self, j, l):
        """Determinant of columns j and l."""
        return self.top_row[j] * self.bottom_row[l] - self.top_row[l] * self.bottom_row[j]


@dataclass(frozen=True)
class GeneratorSet:
    """The d chart generators, ordered by ambient index j != alpha_0."""

    alpha: ChartIndex
    gens: tuple


def chart_matrix(lam, alpha):
    alpha.validate(lam)
    d = lam.d
    a0 = alpha.entries[0]
    top = tuple(theta_chart(lam, alpha, j) for j in range(d + 1))
    bottom = tuple(
        Poly.one() if j == a0 else Poly.variable(Var.z(j)) for j in range(d + 1)
    )
    return ChartMatrix(alpha=alpha, top_row=top, bottom_row=bottom)


def chart_generators(lam, alpha):
    alpha.validate(lam)
    d = lam.d
    a0 = alpha.entries[0]
    th = [theta_chart(lam, alpha, j) for j in range(d + 1)]
    gens = tuple(
        th[a0] * Poly.variable(Var.z(j)) - th[j] for j in range(d + 1) if j != a0
    )
    return GeneratorSet(alpha=alpha, gens=gens)


def minor_identity_check(lam, alpha):
    """Exact check that every 2x2 minor of the chart matrix is the known
    combination of the chart generators.

    For columns j,l != alpha_0:  theta_j z_l - theta_l z_j
                                  = z_j (theta_a0 z_l - theta_l)
                                  - z_l (theta_a0 z_j - theta_j)
    and a minor against column alpha_0 is itself (up to sign) a generator.
    """
    alpha.validate(lam)
    d = lam.d
    a0 = alpha.entries[0]
    th = [theta_chart(lam, alpha, j) for j in range(d + 1)]
    z = [Poly.variable(Var.z(j)) for j in range(d + 1)]
    gen = {
        j: th[a0] * z[j] - th[j] for j in range(d + 1) if j != a0
    }
    matrix = chart_matrix(lam, alpha)
    for j in range(d + 1):
        for l in range(d + 1):
            lhs = th[j] * z[l] - th[l] * z[j]
            rhs = z[j] * (th[a0] * z[l] - th[l]) - z[l] * (th[a0] * z[j] - th[j])
            if lhs != rhs:
                return False
            # the actual matrix minor must agree with the combination
            if j != a0 and l != a0:
                if matrix.minor(j, l) != z[j] * gen[l] - z[l] * gen[j]:
                    return False
            elif j == a0 and l != a0:
                if matrix.minor(j, l) != gen[l]:
                    return False
            elif l == a0 and j != a0:
                if matrix.minor(j, l) != -gen[j]:
                    return False
    return True


def jacobian_submatrix_check(lam, alpha):
    """The partials of the generators with respect to the ambient chart
    coordinates form theta_alpha0 times the identity matrix, exactly."""
    alpha.validate(lam)
    d = lam.d
    a0 = alpha.entries[0]
    th_a0 = theta_chart(lam, alpha, a0)
    gens = chart_generators(lam, alpha).gens
    cols = [j for j in range(d + 1) if j != a0]
    for row, g in zip(cols, gens):
        for col in cols:
            partial = g.differentiate(Var.z(col))
            expected = th_a0 if row == col else Poly.zero()
            if partial != expected:
                return False
    return True


def _chart_point(lam, alpha, rng, bound):
    """Random integer chart point: free coefficient coordinates uniform in
    [-bound, bound], the alpha-selected ones pinned to 1."""
    point = {}
    for r in lam.active_sizes():
        for t in range(lam.multiplicity(r) + 1):
            v = Var.w(r, t)
            point[v] = 1 if t == alpha.entries[r] else rng.randint(-bound, bound)
    return point


def _compiled_thetas(lam):
    """Evaluation-friendly form of all coefficient polynomials: per index j
    a list of (int coeff, ((var, exp), ...))."""
    compiled = []
    for theta in theta_polys(lam):
        compiled.append(
            [(int(c), m.pairs) for m, c in theta.sorted_terms()]
        )
    return compiled


def row_nonvanishing_sample(lam, alpha, trials, seed, bound=10):
    """Sample random chart points and confirm the coefficient row of the
    chart matrix never vanishes entirely.

    The bottom row contains the constant 1, so only the top row needs
    sampling.  Returns False on a counterexample (which would contradict a
    proved statement, so callers treat it as fatal).
    """
    alpha.validate(lam)
    if trials < 1:
        raise DomainError("trials must be >= 1")
    matrix = chart_matrix(lam, alpha)
    if matrix.bottom_row[alpha.entries[0]] != Poly.one():
        return False
    compiled = _compiled_thetas(lam)
    rng = random.Random(seed)
    for _ in range(trials):
        point = _chart_point(lam, alpha, rng, bound)
        all_zero = True
        for terms in compiled:
            value = 0
            for c, pairs in terms:
                v = c
                for var, e in pairs:
                    v *= point[var] ** e
                value += v
            if value:
                all_zero = False
                break
        if all_zero:
            return False
    return True


def evaluate_generators(lam, alpha, point):
    """Exact values of the chart generators at a point given as a mapping
    for both coefficient and ambient chart coordinates."""
    return tuple(g.evaluate(point) for g in chart_generators(lam, alpha).gens)


def gluing_minor_consistency(lam, alpha, alpha2, trials, seed, bound=10):
    """At shared points of two charts, simultaneous vanishing of all 2x2
    minors is chart-independent.

    Points are sampled in global coordinates with the chart-pinned entries
    forced nonzero, then scaled into each chart.  Both generic points and
    points constructed on the incidence scheme are exercised.
    """
    from fractions import Fraction

    alpha.validate(lam)
    alpha2.validate(lam)
    d = lam.d
    rng = random.Random(seed)
    m1 = chart_matrix(lam, alpha)
    m2 = chart_matrix(lam, alpha2)

    def nonzero(r):
        v = 0
        while v == 0:
            v = rng.randint(-bound, bound)
        return v

    minors1 = [m1.minor(j, l) for j in range(d + 1) for l in range(j + 1, d + 1)]
    minors2 = [m2.minor(j, l) for j in range(d + 1) for l in range(j + 1, d + 1)]

    def minors_vanish(minors, point):
        return all(q.evaluate(point) == 0 for q in minors)

    for trial in range(trials):
        # global coordinates: ambient a_0..a_d and per-size coefficients
        if trial % 2 == 0:
            ambient = [rng.randint(-bound, bound) for _ in range(d + 1)]
            coeff = {
                r: [rng.randint(-bound, bound) for _ in range(lam.multiplicity(r) + 1)]
                for r in lam.active_sizes()
            }
        else:
            # a point of the incidence scheme: forms and their product
            coeff = {
                r: [nonzero(r) for _ in range(lam.multiplicity(r) + 1)]
                for r in lam.active_sizes()
            }
            ambient = [1]
            for r in lam.active_sizes():
                for _ in range(r):
                    new = [0] * (len(ambient) + len(coeff[r]) - 1)
                    for i, a in enumerate(ambient):
                        for k, b in enumerate(coeff[r]):
                            new[i + k] += a * b
                    ambient = new
        # both charts must see nonzero pinned coordinates
        ok = ambient[alpha.entries[0]] != 0 and ambient[alpha2.entries[0]] != 0
        for r in lam.active_sizes():
            if coeff[r][alpha.entries[r]] == 0 or coeff[r][alpha2.entries[r]] == 0:
                ok = False
        if not ok:
            continue

        def chart_point(a):
            point = {}
            a0 = a.entries[0]
            for j in range(d + 1):
                if j != a0:
                    point[Var.z(j)] = Fraction(ambient[j], ambient[a0])
            for r in lam.active_sizes():
                pin = coeff[r][a.entries[r]]
                for t in range(lam.multiplicity(r) + 1):
                    point[Var.w(r, t)] = Fraction(coeff[r][t], pin)
            return point

        if minors_vanish(minors1, chart_point(alpha)) != minors_vanish(
            minors2, chart_point(alpha2)
        ):
            return False
    return True
