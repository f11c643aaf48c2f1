"""Exact brute-force references.

Two ways of computing a maximum common generalization (by enumerating
variable renamings, and by enumerating conflict-free literal matchings),
a checker for k-swap stability that works straight from the definition,
and the two size metrics used to classify benchmark instances.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional

from .errors import BudgetExceeded
from .genmodel import EMPTY, GenContext, PairMapping, conflict, gen_pairs, is_generalization, make_pair
from .terms import Goal, substitute, vars_of


@dataclass(frozen=True)
class OracleBudget:
    max_candidates: int = 40
    max_variables: int = 10
    time_limit: float = 60.0

    def __post_init__(self):
        if min(self.max_candidates, self.max_variables, self.time_limit) <= 0:
            raise ValueError("budget fields must be positive")


DEFAULT_BUDGET = OracleBudget()


class _Clock:
    def __init__(self, limit: float, every: int = 1024):
        self.deadline = time.perf_counter() + limit
        self.every = every
        self.n = 0

    def tick(self):
        self.n += 1
        if self.n % self.every == 0 and time.perf_counter() > self.deadline:
            raise BudgetExceeded("oracle time limit exceeded")


def mcg_by_renamings(ctx: GenContext, budget: OracleBudget = DEFAULT_BUDGET) -> PairMapping:
    """Largest generalization found by trying every injective variable mapping.

    Maps the variables of the variable-poorer goal into those of the other;
    each total injective mapping rho collects the pairs (A, A rho) that exist.
    """
    g1, g2 = ctx.g1, ctx.g2
    if not len(g1) or not len(g2):
        return EMPTY
    v1, v2 = sorted(vars_of(g1)), sorted(vars_of(g2))
    if max(len(v1), len(v2)) > budget.max_variables:
        raise BudgetExceeded(f"{max(len(v1), len(v2))} variables > {budget.max_variables}")
    flipped = len(v1) > len(v2)
    src, dst = (g2, g1) if flipped else (g1, g2)
    src_vars, dst_vars = (v2, v1) if flipped else (v1, v2)
    src_lits = list(src)
    clock = _Clock(budget.time_limit, every=256)
    best: list = []
    for image in permutations(dst_vars, len(src_vars)):
        clock.tick()
        rho = dict(zip(src_vars, image))
        hits = []
        for lit in src_lits:
            mapped = substitute(lit, rho)
            if mapped in dst:
                hits.append((lit, mapped))
        if len(hits) > len(best):
            best = hits
            if len(best) == len(src_lits):
                break
    pairs = [make_pair(b, a) if flipped else make_pair(a, b) for a, b in best]
    pm = is_generalization(pairs)
    assert pm is not None
    return pm


def mcg_by_matchings(ctx: GenContext, budget: OracleBudget = DEFAULT_BUDGET) -> PairMapping:
    """Largest generalization found by enumerating conflict-free pair sets.

    Plain depth-first enumeration; a branch is cut as soon as the next pair
    conflicts with the ones already chosen. No size bounding.
    """
    n = len(ctx)
    if n > budget.max_candidates:
        raise BudgetExceeded(f"{n} candidate pairs > {budget.max_candidates}")
    conf = ctx.conflicts
    clock = _Clock(budget.time_limit)
    best_mask, best_size = 0, 0
    stack = [(0, 0, 0)]  # (chosen mask, size, next index)
    while stack:
        clock.tick()
        chosen, size, start = stack.pop()
        if size > best_size:
            best_mask, best_size = chosen, size
        for i in range(n - 1, start - 1, -1):
            if not conf[i] & chosen:
                stack.append((chosen | (1 << i), size + 1, i + 1))
    return ctx.mapping(best_mask) if best_mask else EMPTY


def check_kswap_stable(ctx: GenContext, phi: PairMapping, k: float,
                       budget: OracleBudget = DEFAULT_BUDGET) -> Optional[PairMapping]:
    """Return a k-swap extension of ``phi`` if one exists, else None (stable).

    A k-swap extension is a generalization psi with |psi| > |phi| that keeps
    at least |phi| - k pairs of phi. For each way of dropping r <= k pairs we
    look for r + 1 new pairs compatible with what is kept.
    """
    if is_generalization(phi.pairs) is None:
        raise ValueError("phi is not a generalization")
    clock = _Clock(budget.time_limit, every=256)
    current = sorted(phi.pairs)
    others = [p for p in ctx.candidates if p not in phi.pairs]
    max_drop = len(current) if k == math.inf else min(int(k), len(current))
    for r in range(max_drop + 1):
        for dropped in combinations(current, r):
            kept = [p for p in current if p not in dropped]
            pool = [q for q in others if not any(conflict(q, p) for p in kept)]
            for extra in combinations(pool, r + 1):
                clock.tick()
                if all(not conflict(p, q) for p, q in combinations(extra, 2)):
                    psi = is_generalization(kept + list(extra))
                    assert psi is not None
                    return psi
    return None


def count_variable_combinations(g1: Goal, g2: Goal) -> int:
    """Number of injective total maps from the smaller variable set into the larger."""
    a, b = len(vars_of(g1)), len(vars_of(g2))
    return math.perm(max(a, b), min(a, b))


def count_literal_matchings(g1: Goal, g2: Goal, budget: OracleBudget = DEFAULT_BUDGET,
                            max_side: int = 22) -> int:
    """Number of subsets of the candidate pairs using no literal twice.

    Renaming consistency is deliberately not required. The candidate graph
    splits into connected components; each is counted with a DP over the
    subsets of its smaller side and the component counts are multiplied.
    """
    pairs = gen_pairs(g1, g2)
    if not pairs:
        return 1
    clock = _Clock(budget.time_limit)
    adj: dict = {}
    for p in pairs:
        adj.setdefault(("L", p.left), set()).add(("R", p.right))
        adj.setdefault(("R", p.right), set()).add(("L", p.left))
    total = 1
    seen: set = set()
    for start in adj:
        if start in seen:
            continue
        comp = {start}
        todo = [start]
        while todo:
            for nb in adj[todo.pop()]:
                if nb not in comp:
                    comp.add(nb)
                    todo.append(nb)
        seen |= comp
        total *= _count_component(comp, adj, max_side, clock)
    return total


def _count_component(comp: set, adj: dict, max_side: int, clock: _Clock) -> int:
    lefts = sorted((n for n in comp if n[0] == "L"), key=lambda n: n[1].sort_key)
    rights = sorted((n for n in comp if n[0] == "R"), key=lambda n: n[1].sort_key)
    if len(rights) > len(lefts):
        lefts, rights = rights, lefts
    if len(rights) > max_side:
        raise BudgetExceeded(f"matching component with {len(rights)} literals per side")
    pos = {n: i for i, n in enumerate(rights)}
    counts = {0: 1}
    for node in lefts:
        nbrs = [1 << pos[r] for r in adj[node]]
        nxt = dict(counts)
        for used, c in counts.items():
            clock.tick()
            for bit in nbrs:
                if not used & bit:
                    key = used | bit
                    nxt[key] = nxt.get(key, 0) + c
        counts = nxt
    return sum(counts.values())


def naive_count_literal_matchings(g1: Goal, g2: Goal) -> int:
    """Subset enumeration; exponential, for cross-checking on tiny inputs."""
    pairs = gen_pairs(g1, g2)
    total = 0
    for r in range(len(pairs) + 1):
        for combo in combinations(pairs, r):
            if len({p.left for p in combo}) == r and len({p.right for p in combo}) == r:
                total += 1
    return total


def mcg_size(ctx: GenContext, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    return len(mcg_by_matchings(ctx, budget))


__all__ = [
    "OracleBudget", "DEFAULT_BUDGET", "mcg_by_renamings", "mcg_by_matchings",
    "check_kswap_stable", "count_variable_combinations", "count_literal_matchings",
    "naive_count_literal_matchings", "mcg_size",
]
