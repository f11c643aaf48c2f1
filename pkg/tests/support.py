"""Shared builders for the test suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from setgen.genmodel import GenContext, make_pair
from setgen.instances import DEFAULT_PREDICATES
from setgen.syntax import parse_goal, parse_literal
from setgen.terms import Goal, Literal, Var, rename_apart


def context(left: str, right: str) -> GenContext:
    return GenContext(*rename_apart(parse_goal(left), parse_goal(right)))


def pair(left: str, right: str):
    return make_pair(parse_literal(left), parse_literal(right))


def random_goal(rng: random.Random, prefix: str, max_lits: int, max_vars: int, preds=DEFAULT_PREDICATES,
                min_lits: int = 1, min_vars: int = 1) -> Goal:
    pool = [Var(f"{prefix}{i}") for i in range(1, rng.randint(min_vars, max_vars) + 1)]
    n = rng.randint(min_lits, max_lits)
    lits = set()
    for _ in range(n):
        p = rng.choice(preds)
        lits.add(Literal(p, tuple(rng.choice(pool) for _ in range(p.arity))))
    return Goal(lits)


def random_context(rng: random.Random, max_lits: int = 8, max_vars: int = 6, preds=DEFAULT_PREDICATES,
                   min_lits: int = 1, min_vars: int = 1) -> GenContext:
    g1 = random_goal(rng, "X", max_lits, max_vars, preds, min_lits, min_vars)
    g2 = random_goal(rng, "Y", max_lits, max_vars, preds, min_lits, min_vars)
    return GenContext(g1, g2)


_VARS1 = [Var(n) for n in ("A", "B", "C", "D")]
_VARS2 = [Var(n) for n in ("R", "S", "T", "U")]


def literals(pool):
    return st.one_of(*[
        st.tuples(*[st.sampled_from(pool)] * p.arity).map(lambda args, p=p: Literal(p, args))
        for p in DEFAULT_PREDICATES
    ])


def goals(pool=_VARS1, max_size=6):
    return st.lists(literals(pool), max_size=max_size).map(Goal)


contexts = st.builds(GenContext, goals(_VARS1), goals(_VARS2))


# criterion number -> (passed, detail); printed by the terminal summary hook
ACCEPTANCE: dict = {}


def record(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[number] = (passed, detail)
