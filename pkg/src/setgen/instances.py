"""Random anti-unification problems and the instance file format.

Instance files hold two lines::

    G1: f(X1), g(X1,X2)
    G2: f(Y1), h(Y1,Y2,Y3)

with an optional ``<name>.json`` sidecar carrying the metrics.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from .errors import BudgetExceeded, GenerationExhausted
from .oracles import DEFAULT_BUDGET, OracleBudget, count_literal_matchings, count_variable_combinations
from .syntax import parse_goal
from .terms import Goal, Literal, Symbol, Var, vars_of


@dataclass(frozen=True)
class ProblemClass:
    id: int
    var_range: tuple
    lit_range: tuple
    var_comb_range: tuple
    matchings_range: tuple


CLASSES = {
    1: ProblemClass(1, (5, 10), (5, 15), (0, 60_000), (0, 40_000)),
    2: ProblemClass(2, (6, 10), (10, 15), (60_001, 360_000), (40_001, 210_000)),
    3: ProblemClass(3, (9, 10), (15, 20), (360_001, 3_600_000), (210_001, 9_000_000)),
    4: ProblemClass(4, (10, 12), (15, 20), (3_600_001, 17_000_000), (9_000_001, 17_000_000)),
    5: ProblemClass(5, (10, 15), (15, 20), (17_000_001, 175_000_000), (17_000_001, 175_000_000)),
    6: ProblemClass(6, (10, 18), (15, 22), (175_000_001, 1_750_000_000), (175_000_001, 1_750_000_000)),
}

DEFAULT_PREDICATES = (Symbol("f", 1), Symbol("g", 2), Symbol("h", 3))


@dataclass(frozen=True)
class GeneratorConfig:
    cls: ProblemClass
    seed: int = 0
    predicates: tuple = DEFAULT_PREDICATES
    max_attempts: int = 20_000
    budget: OracleBudget = field(default=DEFAULT_BUDGET, compare=False)

    def __post_init__(self):
        if not self.predicates:
            raise ValueError("predicate pool must not be empty")


@dataclass(frozen=True)
class InstanceMetrics:
    vars1: int
    vars2: int
    lits1: int
    lits2: int
    var_combinations: int
    literal_matchings: int

    def fits(self, c: ProblemClass) -> bool:
        def inside(x, r):
            return r[0] <= x <= r[1]

        return (
            inside(self.vars1, c.var_range) and inside(self.vars2, c.var_range)
            and inside(self.lits1, c.lit_range) and inside(self.lits2, c.lit_range)
            and inside(self.var_combinations, c.var_comb_range)
            and inside(self.literal_matchings, c.matchings_range)
        )


def measure(g1: Goal, g2: Goal, budget: OracleBudget = DEFAULT_BUDGET) -> InstanceMetrics:
    return InstanceMetrics(
        len(vars_of(g1)), len(vars_of(g2)), len(g1), len(g2),
        count_variable_combinations(g1, g2),
        count_literal_matchings(g1, g2, budget),
    )


def classify_instance(g1: Goal, g2: Goal, budget: OracleBudget = DEFAULT_BUDGET) -> set:
    m = measure(g1, g2, budget)
    return {cid for cid, c in CLASSES.items() if m.fits(c)}


def _random_goal(rng: random.Random, prefix: str, n_vars: int, n_lits: int, preds) -> Optional[Goal]:
    pool = [Var(f"{prefix}{i}") for i in range(1, n_vars + 1)]
    lits: set = set()
    tries = 0
    while len(lits) < n_lits:
        tries += 1
        if tries > 50 * n_lits:
            return None
        p = rng.choice(preds)
        lits.add(Literal(p, tuple(rng.choice(pool) for _ in range(p.arity))))
    goal = Goal(lits)
    if len(vars_of(goal)) != n_vars:
        return None
    return goal


def generate_instance(cfg: GeneratorConfig) -> tuple[Goal, Goal]:
    """Draw goal pairs until one satisfies every range of ``cfg.cls``."""
    rng = random.Random(cfg.seed)
    c = cfg.cls
    preds = list(cfg.predicates)
    for _ in range(cfg.max_attempts):
        goals = []
        for prefix in ("X", "Y"):
            n_vars = rng.randint(*c.var_range)
            n_lits = rng.randint(*c.lit_range)
            goals.append(_random_goal(rng, prefix, n_vars, n_lits, preds))
        g1, g2 = goals
        if g1 is None or g2 is None:
            continue
        try:
            if measure(g1, g2, cfg.budget).fits(c):
                return g1, g2
        except BudgetExceeded:
            continue
    raise GenerationExhausted(f"no class-{c.id} instance after {cfg.max_attempts} attempts")


def write_instance(path, g1: Goal, g2: Goal, metrics: Optional[InstanceMetrics] = None) -> None:
    path = Path(path)
    path.write_text(f"G1: {g1}\nG2: {g2}\n", encoding="utf-8")
    if metrics is not None:
        path.with_suffix(".json").write_text(json.dumps(asdict(metrics), indent=2) + "\n", encoding="utf-8")


def read_instance(path) -> tuple[Goal, Goal]:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def parse_instance(text: str) -> tuple[Goal, Goal]:
    goals = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("%") or line.startswith("#"):
            continue
        tag, sep, body = line.partition(":")
        tag = tag.strip().upper()
        if not sep or tag not in ("G1", "G2"):
            raise ValueError(f"expected 'G1: <goal>' or 'G2: <goal>', got {line!r}")
        goals[tag] = parse_goal(body)
    if set(goals) != {"G1", "G2"}:
        raise ValueError("instance needs both a G1 and a G2 line")
    return goals["G1"], goals["G2"]
