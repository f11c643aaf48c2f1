"""Generalizations of two goals as injective sets of literal pairs.

A pair ``(A, A')`` with ``A`` from the first goal and ``A'`` a variant of ``A``
from the second goal is a *candidate*. A set of candidates is a
generalization when no literal is used twice on either side and the
per-pair renamings merge into one renaming. All of these restrictions are
binary, so validity reduces to pairwise absence of conflicts; everything
here leans on that.

:class:`GenContext` numbers the candidates in canonical order and stores the
conflict relation as one bitmask per candidate, which is what the search
code works with.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .renaming import Renaming, compatible, merge, variant_renaming
from .terms import Goal, Literal, vars_of


@dataclass(frozen=True)
class CandidatePair:
    left: Literal
    right: Literal
    rho: Renaming

    @cached_property
    def sort_key(self) -> tuple:
        return (self.left.sort_key, self.right.sort_key)

    def __lt__(self, other: CandidatePair) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self):
        return f"{self.left} ~ {self.right}"


def make_pair(left: Literal, right: Literal) -> CandidatePair:
    rho = variant_renaming(left, right)
    if rho is None:
        raise ValueError(f"{left} and {right} are not variants")
    return CandidatePair(left, right, rho)


def gen_pairs(g1: Goal, g2: Goal) -> list[CandidatePair]:
    """All variant pairs between ``g1`` and ``g2``, in canonical order."""
    by_pred: dict = {}
    for b in g2:
        by_pred.setdefault(b.pred, []).append(b)
    out = []
    for a in g1:
        for b in by_pred.get(a.pred, ()):
            rho = variant_renaming(a, b)
            if rho is not None:
                out.append(CandidatePair(a, b, rho))
    return out


def conflict(p: CandidatePair, q: CandidatePair) -> bool:
    if p.left == q.left or p.right == q.right:
        return True
    return not compatible(p.rho, q.rho)


@dataclass(frozen=True)
class PairMapping:
    pairs: frozenset
    combined: Renaming

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __contains__(self, p):
        return p in self.pairs

    def __eq__(self, other):
        return isinstance(other, PairMapping) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    @property
    def domain(self) -> Goal:
        return Goal(p.left for p in self.pairs)

    @property
    def image(self) -> Goal:
        return Goal(p.right for p in self.pairs)

    def __str__(self):
        lines = [str(p) for p in self]
        lines.append(f"renaming: {self.combined}")
        return "\n".join(lines)


EMPTY = PairMapping(frozenset(), Renaming())


def is_generalization(pairs: Iterable[CandidatePair]) -> Optional[PairMapping]:
    """Return the PairMapping for ``pairs``, or None when two members conflict."""
    pairs = frozenset(pairs)
    lefts, rights = set(), set()
    combined = Renaming()
    for p in pairs:
        if p.left in lefts or p.right in rights:
            return None
        lefts.add(p.left)
        rights.add(p.right)
        combined = merge(combined, p.rho)
        if combined is None:
            return None
    return PairMapping(pairs, combined)


def is_kswap(phi: PairMapping, phi2: PairMapping, k: float) -> bool:
    """Whether ``phi2`` is a k-swap of ``phi``: same size, at most k pairs replaced."""
    return len(phi) == len(phi2) and len(phi.pairs & phi2.pairs) >= len(phi) - k


class GenContext:
    """Candidates and their conflict table for two renamed-apart goals."""

    def __init__(self, g1: Goal, g2: Goal):
        shared = vars_of(g1) & vars_of(g2)
        if shared:
            names = ", ".join(sorted(v.name for v in shared))
            raise ValueError(f"goals are not renamed apart (shared: {names})")
        self.g1 = g1
        self.g2 = g2
        self.candidates: tuple = tuple(gen_pairs(g1, g2))
        self.index = {p: i for i, p in enumerate(self.candidates)}
        self.full_mask = (1 << len(self.candidates)) - 1
        self._scores: dict = {}

    @cached_property
    def conflicts(self) -> list[int]:
        """Per candidate, the bitmask of candidates it conflicts with (built on first use)."""
        n = len(self.candidates)
        masks = [0] * n
        cands = self.candidates
        for i in range(n):
            p = cands[i]
            for j in range(i + 1, n):
                if conflict(p, cands[j]):
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        return masks

    def __len__(self):
        return len(self.candidates)

    def conflicting(self, p: CandidatePair) -> list[CandidatePair]:
        return [self.candidates[j] for j in bits(self.conflicts[self.index[p]])]

    def scores(self, estimator) -> list[float]:
        key = estimator
        if key not in self._scores:
            self._scores[key] = [estimator(self, p) for p in self.candidates]
        return self._scores[key]

    # conversions between pair sets and bitmasks

    def mask(self, pairs: Iterable[CandidatePair]) -> int:
        m = 0
        for p in pairs:
            m |= 1 << self.index[p]
        return m

    def pairs(self, mask: int) -> list[CandidatePair]:
        return [self.candidates[i] for i in bits(mask)]

    def mapping(self, mask: int) -> PairMapping:
        pm = is_generalization(self.pairs(mask))
        if pm is None:
            raise AssertionError("mask does not describe a generalization")
        return pm

    def mask_is_valid(self, mask: int) -> bool:
        for i in bits(mask):
            if self.conflicts[i] & mask:
                return False
        return True

    def to_indices(self, phi: PairMapping) -> list[list[int]]:
        """JSON form: [left, right] positions in the goals' canonical orders."""
        return [[self.g1.index(p.left), self.g2.index(p.right)] for p in phi]

    def from_indices(self, rows) -> PairMapping:
        lefts, rights = self.g1.ordered, self.g2.ordered
        pairs = [make_pair(lefts[i], rights[j]) for i, j in rows]
        pm = is_generalization(pairs)
        if pm is None:
            raise ValueError("pairs do not form a generalization")
        return pm


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def enforce(phi: PairMapping, phi2: PairMapping) -> PairMapping:
    """``phi2`` plus every pair of ``phi`` that conflicts with nothing in ``phi2``."""
    kept = [p for p in phi.pairs if p in phi2.pairs or not any(conflict(p, q) for q in phi2.pairs)]
    out = is_generalization(list(phi2.pairs) + kept)
    assert out is not None
    return out


def comp(base: PairMapping, s: Iterable[CandidatePair]) -> set:
    """Members of ``s`` that could be added to ``base`` keeping it valid."""
    return {
        p for p in s
        if p not in base.pairs and not any(conflict(p, q) for q in base.pairs)
    }

