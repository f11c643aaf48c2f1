"""Batch benchmark: engines versus exact oracles on generated instances.

For every (class, engine) the report carries the mean and standard
deviation of the runtime in milliseconds and of the accuracy, i.e. the
engine's generalization size as a percentage of the mcg size.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from .engine import EngineConfig, kswap_generalize
from .errors import BudgetExceeded, GenerationExhausted, InvariantViolation
from .genmodel import GenContext
from .instances import CLASSES, GeneratorConfig, generate_instance
from .oracles import OracleBudget, mcg_by_matchings, mcg_by_renamings

log = logging.getLogger(__name__)

SCHEMA = "setgen.bench/1"
COLUMNS = ("class", "engine", "mean_ms", "sd_ms", "mean_pct", "sd_pct", "n", "failures")

DEFAULT_ENGINES = tuple(EngineConfig(k=k, w=1) for k in (0, 2, 4, math.inf))
ORACLES = {"matchings": mcg_by_matchings, "renamings": mcg_by_renamings}
BENCH_BUDGET = OracleBudget(max_candidates=1_000, max_variables=18, time_limit=60.0)


@dataclass(frozen=True)
class BenchPlan:
    classes: tuple = (1, 2)
    per_class: int = 100
    engines: tuple = DEFAULT_ENGINES
    oracles: tuple = ("matchings",)
    seed: int = 0
    time_limit: float = 60.0
    workers: int = 1

    def validate(self) -> None:
        if self.per_class < 1:
            raise ValueError("per_class must be at least 1")
        if not self.engines:
            raise ValueError("at least one engine is required")
        if not self.oracles:
            raise ValueError("at least one oracle is required to measure accuracy")
        for o in self.oracles:
            if o not in ORACLES:
                raise ValueError(f"unknown oracle {o!r}")
        for c in self.classes:
            if c not in CLASSES:
                raise ValueError(f"unknown class {c}")


@dataclass
class BenchRow:
    class_id: int
    engine: str
    mean_ms: float
    sd_ms: float
    mean_pct: Optional[float]
    sd_pct: Optional[float]
    n: int
    failures: int


@dataclass
class BenchReport:
    rows: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def row(self, class_id: int, engine: str) -> BenchRow:
        for r in self.rows:
            if r.class_id == class_id and r.engine == engine:
                return r
        raise KeyError((class_id, engine))


def instance_seed(seed: int, class_id: int, index: int) -> int:
    digest = hashlib.blake2b(f"{seed}/{class_id}/{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def accuracy(size: int, mcg: int) -> float:
    return 100.0 if mcg == 0 else 100.0 * size / mcg


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, (time.perf_counter() - t0) * 1000.0


def run_instance(plan: BenchPlan, class_id: int, index: int) -> dict:
    """Generate one instance and run every oracle and engine on it."""
    cfg = GeneratorConfig(CLASSES[class_id], seed=instance_seed(plan.seed, class_id, index), budget=BENCH_BUDGET)
    out = {"class": class_id, "index": index, "oracles": {}, "engines": {}, "mcg": None}
    try:
        g1, g2 = generate_instance(cfg)
    except GenerationExhausted as exc:
        out["error"] = str(exc)
        return out
    ctx = GenContext(g1, g2)
    ctx.conflicts  # build the shared conflict table outside every timed region
    budget = OracleBudget(BENCH_BUDGET.max_candidates, BENCH_BUDGET.max_variables, plan.time_limit)
    sizes = []
    for name in plan.oracles:
        try:
            pm, ms = _timed(ORACLES[name], ctx, budget)
        except BudgetExceeded:
            out["oracles"][name] = None
            continue
        out["oracles"][name] = (ms, len(pm))
        sizes.append(len(pm))
    if len(set(sizes)) > 1:
        raise InvariantViolation(f"exact oracles disagree on class {class_id} instance {index}: {sizes}")
    out["mcg"] = sizes[0] if sizes else None
    for cfg_e in plan.engines:
        ctx.scores(cfg_e.estimator)  # static scores are part of context setup, not search
        try:
            pm, ms = _timed(kswap_generalize, ctx, cfg_e, time_limit=plan.time_limit)
        except BudgetExceeded:
            out["engines"][cfg_e.label] = None
            continue
        if out["mcg"] is not None and len(pm) > out["mcg"]:
            raise InvariantViolation("engine result larger than the mcg")
        out["engines"][cfg_e.label] = (ms, len(pm))
    return out


def _sd(xs):
    return statistics.stdev(xs) if len(xs) > 1 else 0.0


def aggregate(plan: BenchPlan, results: list) -> BenchReport:
    report = BenchReport(meta={
        "seed": plan.seed, "per_class": plan.per_class, "classes": list(plan.classes),
        "engines": [e.label for e in plan.engines], "oracles": list(plan.oracles),
    })
    for c in plan.classes:
        mine = [r for r in results if r["class"] == c]
        for name in plan.oracles:
            runs = [r["oracles"].get(name) for r in mine]
            ok = [x for x in runs if x is not None]
            times = [ms for ms, _ in ok]
            report.rows.append(BenchRow(
                c, f"mcg_{name}", statistics.fmean(times) if times else math.nan, _sd(times),
                None, None, len(ok), len(runs) - len(ok),
            ))
        for e in plan.engines:
            times, accs, fails = [], [], 0
            for r in mine:
                got = r["engines"].get(e.label)
                if got is None or r["mcg"] is None:
                    fails += 1
                    continue
                ms, size = got
                times.append(ms)
                accs.append(accuracy(size, r["mcg"]))
            report.rows.append(BenchRow(
                c, e.label,
                statistics.fmean(times) if times else math.nan, _sd(times),
                statistics.fmean(accs) if accs else None, _sd(accs) if accs else None,
                len(times), fails,
            ))
        report.warnings.extend(_soft_checks(report, c, plan))
    for w in report.warnings:
        log.warning(w)
    return report


def _soft_checks(report: BenchReport, c: int, plan: BenchPlan) -> list:
    out = []
    windowed = sorted((e for e in plan.engines if not e.exhaustive_inner and e.w == 1), key=lambda e: e.k)
    prev = None
    for e in windowed:
        acc = report.row(c, e.label).mean_pct
        if acc is None:
            continue
        if prev is not None and acc + 1.0 < prev[1]:
            out.append(f"class {c}: mean accuracy drops from {prev[1]:.1f}% ({prev[0]}) to {acc:.1f}% ({e.label})")
        prev = (e.label, acc)
    return out


def dispersion(report: BenchReport) -> list:
    """(class, engine, sd_ms/mean_ms, sd_pct/mean_pct) for every engine row."""
    out = []
    for r in report.rows:
        if r.mean_pct is None or not r.n:
            continue
        out.append((r.class_id, r.engine, r.sd_ms / r.mean_ms if r.mean_ms else 0.0,
                    r.sd_pct / r.mean_pct if r.mean_pct else 0.0))
    return out


def run_bench(plan: BenchPlan) -> BenchReport:
    plan.validate()
    jobs = [(c, i) for c in plan.classes for i in range(plan.per_class)]
    workers = max(1, plan.workers)
    if workers == 1:
        results = [run_instance(plan, c, i) for c, i in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_instance, plan, c, i) for c, i in jobs]
            results = [f.result() for f in futures]
    return aggregate(plan, results)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("SETGEN_WORKERS", "1")))
    except ValueError:
        return 1


# serialization

def _fmt(x, pattern=".2f"):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "-"
    return format(x, pattern)


def _cells(r: BenchRow) -> list:
    return [str(r.class_id), r.engine, _fmt(r.mean_ms, ".3f"), _fmt(r.sd_ms, ".3f"),
            _fmt(r.mean_pct, ".1f"), _fmt(r.sd_pct, ".1f"), str(r.n), str(r.failures)]


def emit_report(report: BenchReport, fmt: str = "text") -> bytes:
    if fmt == "json":
        doc = {"schema": SCHEMA, "meta": report.meta, "warnings": report.warnings,
               "rows": [_row_json(r) for r in report.rows]}
        return (json.dumps(doc, indent=2, allow_nan=False) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in report.rows:
            w.writerow(_cells(r))
        return buf.getvalue().encode()
    if fmt == "text":
        table = [list(COLUMNS)] + [_cells(r) for r in report.rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(COLUMNS))]
        lines = ["  ".join(cell.rjust(widths[i]) if i >= 2 else cell.ljust(widths[i])
                           for i, cell in enumerate(row)).rstrip() for row in table]
        lines += [f"warning: {w}" for w in report.warnings]
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown report format {fmt!r}")


def _row_json(r: BenchRow) -> dict:
    d = asdict(r)
    for key in ("mean_ms", "sd_ms"):
        if isinstance(d[key], float) and math.isnan(d[key]):
            d[key] = None
    return d


def parse_report(data) -> BenchReport:
    doc = json.loads(data)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {doc.get('schema')!r}")
    rows = []
    for d in doc["rows"]:
        for key in ("mean_ms", "sd_ms"):
            if d[key] is None:
                d[key] = math.nan
        rows.append(BenchRow(**d))
    return BenchReport(rows, list(doc.get("warnings", [])), dict(doc.get("meta", {})))
