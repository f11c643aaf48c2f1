"""k-swap stable generalization.

The outer loop repeatedly tries to force a new candidate pair (the *anchor*)
into the current mapping phi. Forcing the anchor may evict conflicting pairs;
the anchor is accepted only when at most ``k`` pairs of phi are swapped out
and the same number of fresh pairs can be swapped in, so each accepted step
grows phi by exactly one.

The swap search keeps a LIFO stack of partial replacement sets and a FIFO
queue of removal sets. With a window ``w`` only the ``w`` best (resp. worst)
quality tiers are pushed (resp. enqueued) at each branch point; in
exhaustive mode every alternative is, which makes the result k-swap stable.

Internally mappings are bitmasks over the context's candidate indices.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetExceeded, InvariantViolation
from .genmodel import EMPTY, CandidatePair, GenContext, PairMapping, bits
from .omega import UNBOUNDED, QualityEstimator, omega_conflicts, window_indices
from .terms import Goal, rename_apart

_CHECK_EVERY = 512


@dataclass(frozen=True)
class EngineConfig:
    k: float = UNBOUNDED
    w: float = 1
    exhaustive_inner: bool = False
    estimator: QualityEstimator = field(default=omega_conflicts, compare=False)
    restart: bool = True

    def __post_init__(self):
        if self.k != UNBOUNDED and (self.k < 0 or int(self.k) != self.k):
            raise ValueError(f"k must be a non-negative integer or inf, got {self.k}")
        if self.w != UNBOUNDED and (self.w < 1 or int(self.w) != self.w):
            raise ValueError(f"w must be a positive integer or inf, got {self.w}")

    @property
    def label(self) -> str:
        k = "inf" if self.k == UNBOUNDED else str(int(self.k))
        w = "inf" if self.w == UNBOUNDED else str(int(self.w))
        tag = f"k={k},w={w}"
        if self.exhaustive_inner:
            tag += ",exh"
        if not self.restart:
            tag += ",no-restart"
        return tag


@dataclass(frozen=True)
class SwapProposal:
    phi_s: frozenset
    phi_g: frozenset
    anchor: CandidatePair


def _popcount(m: int) -> int:
    return bin(m).count("1")


class _Search:
    def __init__(self, ctx: GenContext, cfg: EngineConfig, time_limit: Optional[float] = None):
        self.ctx = ctx
        self.cfg = cfg
        self.conf = ctx.conflicts
        self.full = ctx.full_mask
        self.scores = ctx.scores(cfg.estimator)
        self.deadline = None if time_limit is None else time.perf_counter() + time_limit
        self.ticks = 0

    def _tick(self):
        self.ticks += 1
        if self.deadline is not None and self.ticks % _CHECK_EVERY == 1:
            if time.perf_counter() > self.deadline:
                raise BudgetExceeded("generalization time limit exceeded")

    def run(self) -> list[int]:
        scores = self.scores
        order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
        phi = 0
        snaps = [phi]
        while True:
            accepted = False
            for a in order:
                if phi >> a & 1:
                    continue
                found = self.select(phi, a)
                if found is None:
                    continue
                phi_s, phi_g = found
                phi = (phi & ~phi_s) | phi_g | (1 << a)
                if not self.ctx.mask_is_valid(phi) or _popcount(phi) != len(snaps):
                    raise InvariantViolation("accepted swap broke the generalization")
                snaps.append(phi)
                accepted = True
                if self.cfg.restart:
                    break
            if not accepted:
                return snaps

    def select(self, phi: int, a: int) -> Optional[tuple[int, int]]:
        conf, k = self.conf, self.cfg.k
        w = UNBOUNDED if self.cfg.exhaustive_inner else self.cfg.w
        abit = 1 << a
        phi_s = phi & conf[a]
        enforced = (phi & ~phi_s) | abit
        s = self.full & ~enforced
        queue: deque = deque()
        queued = {phi_s}
        while _popcount(phi_s) <= k:
            phi_g = self._grow(phi & ~phi_s | abit, s, _popcount(phi_s), w)
            if phi_g is not None:
                return phi_s, phi_g
            rest = list(bits(phi & ~phi_s))
            for p in sorted(window_indices(rest, self.scores, w, highest=False),
                            key=lambda i: (self.scores[i], i)):
                nxt = phi_s | (1 << p)
                if nxt not in queued:
                    queued.add(nxt)
                    queue.append(nxt)
            if not queue:
                return None
            phi_s = queue.popleft()
            s = self.full & ~(phi | abit)
        return None

    def _grow(self, base0: int, s: int, target: int, w: float) -> Optional[int]:
        """Depth-first search for ``target`` compatible pairs to add to ``base0``."""
        if target == 0:
            return 0
        conf, scores = self.conf, self.scores
        # blocked: every candidate conflicting with something in the base
        blocked = 0
        for i in bits(base0):
            blocked |= conf[i]
        stack = []
        seen = {0}
        phi_g, size = 0, 0
        while True:
            self._tick()
            free = s & ~(base0 | phi_g | blocked)
            if free:
                tier = window_indices(list(bits(free)), scores, w, highest=True)
                tier.sort(key=lambda i: (-scores[i], i))
                if size + 1 == target:
                    return phi_g | (1 << tier[0])
                # reversed so the best, canonically first pair is popped first
                for i in reversed(tier):
                    ng = phi_g | (1 << i)
                    if ng not in seen:
                        seen.add(ng)
                        stack.append((ng, s & ~(1 << i), size + 1, blocked | conf[i]))
            if not stack:
                return None
            phi_g, s, size, blocked = stack.pop()


def kswap_generalize(ctx: GenContext, cfg: EngineConfig = EngineConfig(),
                     time_limit: Optional[float] = None) -> PairMapping:
    snaps = _Search(ctx, cfg, time_limit).run()
    return ctx.mapping(snaps[-1]) if snaps[-1] else EMPTY


def anytime_snapshots(ctx: GenContext, cfg: EngineConfig = EngineConfig(),
                      time_limit: Optional[float] = None) -> list[PairMapping]:
    return [ctx.mapping(m) if m else EMPTY for m in _Search(ctx, cfg, time_limit).run()]


def select_swap(ctx: GenContext, phi: PairMapping, anchor: CandidatePair,
                cfg: EngineConfig = EngineConfig()) -> Optional[SwapProposal]:
    """Look for a swap that lets ``anchor`` into ``phi``; None if there is none."""
    if anchor in phi:
        raise ValueError("anchor is already part of the mapping")
    found = _Search(ctx, cfg).select(ctx.mask(phi.pairs), ctx.index[anchor])
    if found is None:
        return None
    phi_s, phi_g = found
    return SwapProposal(frozenset(ctx.pairs(phi_s)), frozenset(ctx.pairs(phi_g)), anchor)


def generalize(g1: Goal, g2: Goal, cfg: EngineConfig = EngineConfig()) -> PairMapping:
    """Rename apart, build the context and run the engine."""
    g1, g2 = rename_apart(g1, g2)
    return kswap_generalize(GenContext(g1, g2), cfg)


def parse_bound(text: str) -> float:
    text = str(text).strip().lower()
    if text in ("inf", "infinity", "unbounded", "oo"):
        return math.inf
    return int(text)
