"""Quality estimators for candidate pairs and W-windowed selection.

An estimator is any callable ``(ctx, pair) -> float``; higher means the pair
is more likely to belong to a maximal generalization. A window of ``w``
admits the pairs whose score is among the ``w`` best *distinct* scores, so
ties never split a tier.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

from .genmodel import CandidatePair, GenContext

QualityEstimator = Callable[[GenContext, CandidatePair], float]

UNBOUNDED = math.inf


def omega_conflicts(ctx: GenContext, p: CandidatePair) -> float:
    """1 / (1 + number of other candidates that conflict with ``p``)."""
    return 1.0 / (bin(ctx.conflicts[ctx.index[p]]).count("1") + 1)


ESTIMATORS: dict[str, QualityEstimator] = {"conflicts": omega_conflicts}


def table_estimator(table: dict, default: float = 0.0) -> QualityEstimator:
    """Estimator reading fixed scores from ``table`` (keyed by CandidatePair)."""

    def est(ctx, p):
        return table.get(p, default)

    return est


def _window(items: list, score, w: float, highest: bool) -> list:
    if w == UNBOUNDED or not items:
        return items
    tiers = sorted({score(x) for x in items}, reverse=highest)
    admitted = set(tiers[: int(w)])
    return [x for x in items if score(x) in admitted]


def max_w(scored: Iterable[CandidatePair], w: float, est: QualityEstimator, ctx: GenContext) -> set:
    return set(_window(list(scored), lambda p: est(ctx, p), w, highest=True))


def min_w(scored: Iterable[CandidatePair], w: float, est: QualityEstimator, ctx: GenContext) -> set:
    return set(_window(list(scored), lambda p: est(ctx, p), w, highest=False))


def window_indices(indices: list[int], scores: list[float], w: float, highest: bool) -> list[int]:
    """Index-level ``max_w``/``min_w`` used by the search engine."""
    return _window(indices, scores.__getitem__, w, highest)


def score_table(ctx: GenContext, est: QualityEstimator = omega_conflicts) -> list[dict]:
    return [
        {"left": str(p.left), "right": str(p.right), "score": s}
        for p, s in zip(ctx.candidates, ctx.scores(est))
    ]
