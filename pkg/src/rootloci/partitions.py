"""Partitions of an integer, their coarsenings and splittings.

A degree-d binary form with root multiplicities given by a partition lambda
degenerates onto strata indexed by coarsenings mu of lambda; the local
geometry of such a stratum is controlled by the ways lambda's parts can be
grouped into the parts of mu ("splittings").  This module provides the
combinatorics; no polynomial arithmetic happens here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError


class Partition:
    """A partition of d >= 1, parts stored in descending order.

    Carries both the part list and the exponent vector (e_1, ..., e_d)
    where e_r counts parts equal to r.
    """

    __slots__ = ("parts", "d", "exponents", "_hash")

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise DomainError("a partition needs at least one part")
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool) or p < 1:
                raise DomainError("parts must be integers >= 1, got %r" % (p,))
        parts = tuple(sorted(parts, reverse=True))
        self.parts = parts
        self.d = sum(parts)
        exps = [0] * self.d
        for p in parts:
            exps[p - 1] += 1
        self.exponents = tuple(exps)
        self._hash = hash(parts)

    @classmethod
    def from_string(cls, text):
        """Parse "1,1,2" (any order, whitespace tolerated)."""
        pieces = [s.strip() for s in text.split(",") if s.strip()]
        if not pieces:
            raise DomainError("empty partition string")
        try:
            parts = [int(s) for s in pieces]
        except ValueError:
            raise DomainError("bad partition string %r" % (text,)) from None
        return cls(parts)

    @property
    def num_parts(self):
        return len(self.parts)

    def multiplicity(self, r):
        """e_r, the number of parts equal to r (0 for r outside 1..d)."""
        if 1 <= r <= self.d:
            return self.exponents[r - 1]
        return 0

    def active_sizes(self):
        """The part sizes r with e_r > 0, ascending."""
        return tuple(r for r in range(1, self.d + 1) if self.exponents[r - 1] > 0)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.d, self.parts) < (other.d, other.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return ",".join(str(p) for p in self.parts)

    def __repr__(self):
        return "Partition(%s)" % (self.parts,)


@dataclass(frozen=True)
class Splitting:
    """An ordered grouping of a refinement's parts into the parts of `target`.

    blocks[k] is a partition of target.parts[k]; the multiset union of all
    block parts is the refining partition.
    """

    target: Partition
    blocks: tuple

    def refinement_parts(self):
        parts = []
        for b in self.blocks:
            parts.extend(b.parts)
        return tuple(sorted(parts, reverse=True))

    def is_valid_for(self, lam):
        if len(self.blocks) != self.target.num_parts:
            return False
        for mu_k, block in zip(self.target.parts, self.blocks):
            if block.d != mu_k:
                return False
        return self.refinement_parts() == lam.parts


@dataclass(frozen=True)
class StratumLabel:
    """Singularity data of one boundary stratum inside a coincident root locus."""

    fiber_count: int
    tangent_degenerate: bool
    nonsingular: bool

    def text(self):
        """Compact edge label: "" for nonsingular, else e.g. "2", "*", "2*"."""
        if self.nonsingular:
            return ""
        label = str(self.fiber_count) if self.fiber_count > 1 else ""
        if self.tangent_degenerate:
            label += "*"
        return label


def make_partition(parts):
    """Validate and canonicalize a sequence of positive integers."""
    return Partition(parts)


def is_even(lam):
    """True iff all parts of the partition are equal."""
    return len(set(lam.parts)) == 1


def _set_partitions(items):
    """Yield all partitions of the list `items` into nonempty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for blocks in _set_partitions(rest):
        # put `first` in its own block
        yield [[first]] + blocks
        # or into one of the existing blocks
        for i in range(len(blocks)):
            yield blocks[:i] + [[first] + blocks[i]] + blocks[i + 1 :]


def coarsenings(lam, proper=False):
    """All partitions obtained by merging parts of `lam` (summing blocks).

    With proper=True, `lam` itself is excluded.
    """
    found = set()
    for blocks in _set_partitions(list(lam.parts)):
        mu = Partition(sum(b) for b in blocks)
        found.add(mu)
    if proper:
        found.discard(lam)
    return frozenset(found)


def _counts(parts):
    c = {}
    for p in parts:
        c[p] = c.get(p, 0) + 1
    return c


def _sub_multisets_with_sum(values, counts, target, start=0):
    """Yield count-vectors over values[start:] picking a sub-multiset of sum `target`."""
    if target == 0:
        yield {}
        return
    if start >= len(values):
        return
    v = values[start]
    max_take = min(counts[v], target // v)
    for take in range(max_take, -1, -1):
        for tail in _sub_multisets_with_sum(values, counts, target - take * v, start + 1):
            if take:
                picked = dict(tail)
                picked[v] = take
                yield picked
            else:
                yield tail


def splittings(mu, lam):
    """All ordered splittings of `mu` into `lam`.

    Slot k receives a partition of mu.parts[k]; the slots together use up
    exactly the multiset of lam's parts.  Slots are ordered (mu's stored
    descending order), so equal parts of mu still give distinct slots.
    Returns () when mu is not a coarsening of lam.
    """
    if mu.d != lam.d:
        return ()
    values = sorted(_counts(lam.parts), reverse=True)
    results = []

    def rec(slot, counts, acc):
        if slot == mu.num_parts:
            results.append(Splitting(target=mu, blocks=tuple(acc)))
            return
        for picked in _sub_multisets_with_sum(values, counts, mu.parts[slot]):
            remaining = dict(counts)
            block_parts = []
            for v, k in picked.items():
                remaining[v] -= k
                block_parts.extend([v] * k)
            acc.append(Partition(block_parts))
            rec(slot + 1, remaining, acc)
            acc.pop()

    rec(0, _counts(lam.parts), [])
    results.sort(key=lambda s: tuple(b.parts for b in s.blocks), reverse=True)
    return tuple(results)


def classify_stratum(lam, mu):
    """Singularity label of the stratum of forms with multiplicities `mu`
    inside the locus for `lam`.

    The stratum is nonsingular exactly when the splitting is unique and all
    its blocks are even; multiple splittings give a multi-branch (nodal)
    point, a non-even block a degenerate tangent map.
    """
    splits = splittings(mu, lam)
    if not splits:
        raise DomainError("%s is not a coarsening of %s" % (mu, lam))
    fiber_count = len(splits)
    tangent_degenerate = any(
        not is_even(block) for s in splits for block in s.blocks
    )
    return StratumLabel(
        fiber_count=fiber_count,
        tangent_degenerate=tangent_degenerate,
        nonsingular=(fiber_count == 1 and not tangent_degenerate),
    )


@lru_cache(maxsize=None)
def all_partitions(d):
    """All partitions of d, descending parts, sorted descending-lex."""
    if d < 1:
        raise DomainError("d must be >= 1")

    def gen(remaining, maxpart):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(Partition(p) for p in gen(d, d))
