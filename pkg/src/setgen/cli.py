"""Command line interface: ``setgen <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 budget or time limit
exceeded, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .bench import BenchPlan, default_workers, emit_report, instance_seed, run_bench
from .engine import EngineConfig, anytime_snapshots, parse_bound
from .errors import BudgetExceeded, GenerationExhausted, InvariantViolation
from .genmodel import GenContext, PairMapping
from .instances import CLASSES, GeneratorConfig, generate_instance, measure, read_instance, write_instance
from .isip import SizeOrderError, decide_isip_direct, decide_isip_via_mcg, read_graph, reduce_isip
from .oracles import OracleBudget, check_kswap_stable, mcg_by_matchings, mcg_by_renamings
from .omega import ESTIMATORS, score_table
from .terms import rename_apart

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path) -> GenContext:
    g1, g2 = read_instance(path)
    return GenContext(*rename_apart(g1, g2))


def _mapping_doc(ctx: GenContext, pm: PairMapping) -> dict:
    return {
        "pairs": ctx.to_indices(pm),
        "size": len(pm),
        "generalization": str(pm.domain),
        "renaming": {str(a): str(b) for a, b in pm.combined.items()},
    }


def _print_mapping(pm: PairMapping, **extra):
    for p in pm:
        print(p)
    print(f"renaming: {pm.combined}")
    print(f"size: {len(pm)}")
    for key, val in extra.items():
        print(f"{key}: {val}")


def _budget(args) -> OracleBudget:
    return OracleBudget(args.max_candidates, args.max_variables, args.time_limit or 60.0)


def cmd_generalize(args) -> int:
    ctx = _load(args.instance)
    cfg = EngineConfig(k=parse_bound(args.k), w=parse_bound(args.w), exhaustive_inner=args.exhaustive_inner,
                       estimator=ESTIMATORS[args.estimator], restart=not args.no_restart)
    ctx.scores(cfg.estimator)
    t0 = time.perf_counter()
    snaps = anytime_snapshots(ctx, cfg, time_limit=args.time_limit)
    elapsed = (time.perf_counter() - t0) * 1000.0
    pm = snaps[-1]
    if args.json:
        doc = _mapping_doc(ctx, pm)
        doc.update(config=cfg.label, elapsed_ms=elapsed)
        if args.snapshots:
            doc["snapshots"] = [ctx.to_indices(s) for s in snaps]
        if args.dump_scores:
            doc["scores"] = score_table(ctx, cfg.estimator)
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    if args.snapshots:
        for i, s in enumerate(snaps):
            print(f"snapshot {i}: {{{s.domain}}}")
    if args.dump_scores:
        for row in score_table(ctx, cfg.estimator):
            print(f"score {row['left']} ~ {row['right']}: {row['score']:.4f}")
    _print_mapping(pm, config=cfg.label, elapsed_ms=f"{elapsed:.3f}")
    return EXIT_OK


def cmd_mcg(args) -> int:
    ctx = _load(args.instance)
    fn = {"renamings": mcg_by_renamings, "matchings": mcg_by_matchings}[args.method]
    t0 = time.perf_counter()
    pm = fn(ctx, _budget(args))
    elapsed = (time.perf_counter() - t0) * 1000.0
    if args.json:
        doc = _mapping_doc(ctx, pm)
        doc.update(method=args.method, elapsed_ms=elapsed)
        print(json.dumps(doc, indent=2))
    else:
        _print_mapping(pm, method=args.method, elapsed_ms=f"{elapsed:.3f}")
    return EXIT_OK


def cmd_check_stability(args) -> int:
    ctx = _load(args.instance)
    doc = json.loads(Path(args.mapping).read_text(encoding="utf-8"))
    rows = doc["pairs"] if isinstance(doc, dict) else doc
    phi = ctx.from_indices(rows)
    ext = check_kswap_stable(ctx, phi, parse_bound(args.k), _budget(args))
    if args.json:
        print(json.dumps({"stable": ext is None, "k": args.k,
                          "extension": None if ext is None else _mapping_doc(ctx, ext)}, indent=2))
    elif ext is None:
        print(f"stable: no {args.k}-swap extension of the size-{len(phi)} mapping")
    else:
        print(f"not stable: {args.k}-swap extension of size {len(ext)}")
        _print_mapping(ext)
    return EXIT_OK


def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for i in range(args.count):
        cfg = GeneratorConfig(CLASSES[args.cls], seed=instance_seed(args.seed, args.cls, i))
        g1, g2 = generate_instance(cfg)
        path = out / f"class{args.cls}_{i:04d}.txt"
        write_instance(path, g1, g2, measure(g1, g2))
        written.append(str(path))
    if args.json:
        print(json.dumps({"written": written}, indent=2))
    else:
        print("\n".join(written))
    return EXIT_OK


def cmd_classify(args) -> int:
    g1, g2 = read_instance(args.instance)
    g1, g2 = rename_apart(g1, g2)
    m = measure(g1, g2, _budget(args))
    classes = sorted(cid for cid, c in CLASSES.items() if m.fits(c))
    if args.json:
        doc = dict(m.__dict__)
        doc["classes"] = classes
        print(json.dumps(doc, indent=2))
    else:
        for key, val in m.__dict__.items():
            print(f"{key}: {val}")
        print("classes: " + (", ".join(map(str, classes)) or "none"))
    return EXIT_OK


def cmd_reduce(args) -> int:
    g1, g2 = read_graph(args.g1), read_graph(args.g2)
    a, b = reduce_isip(g1, g2, induced=not args.plain)
    doc = {"G1": str(a), "G2": str(b)}
    if args.decide:
        doc["via_mcg"] = decide_isip_via_mcg(g1, g2, _budget(args), induced=not args.plain)
        doc["direct"] = decide_isip_direct(g1, g2, induced=not args.plain)
        if doc["via_mcg"] != doc["direct"]:
            raise InvariantViolation("reduction and direct decision disagree")
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for key, val in doc.items():
            print(f"{key}: {val}")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.full:
        classes, per_class = tuple(CLASSES), 1000
    else:
        classes = tuple(int(c) for c in args.classes.split(","))
        per_class = args.per_class
        if any(c >= 3 for c in classes) and not args.hard:
            raise ValueError("classes 3-6 need --hard (exact oracles get expensive)")
    engines = tuple(EngineConfig(k=parse_bound(k), w=parse_bound(args.w)) for k in args.k_values.split(","))
    plan = BenchPlan(
        classes=classes, per_class=per_class, engines=engines,
        oracles=tuple(args.oracles.split(",")), seed=args.seed,
        time_limit=args.time_limit or 60.0,
        workers=1 if args.serial else (args.workers or default_workers()),
    )
    report = run_bench(plan)
    fmt = "json" if args.json else args.format
    data = emit_report(report, fmt)
    if args.out:
        Path(args.out).write_bytes(data)
    sys.stdout.write(data.decode())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--time-limit", type=float, default=None, help="seconds per search")
    common.add_argument("--max-candidates", type=int, default=40)
    common.add_argument("--max-variables", type=int, default=10)
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="setgen", description="Anti-unification of goals as literal sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("generalize", parents=[common], help="k-swap stable generalization")
    s.add_argument("instance")
    s.add_argument("--k", default="inf")
    s.add_argument("--w", default="1")
    s.add_argument("--exhaustive-inner", action="store_true")
    s.add_argument("--snapshots", action="store_true")
    s.add_argument("--no-restart", action="store_true", help="continue the anchor pass after a swap")
    s.add_argument("--estimator", choices=sorted(ESTIMATORS), default="conflicts")
    s.add_argument("--dump-scores", action="store_true")
    s.set_defaults(func=cmd_generalize)

    s = sub.add_parser("mcg", parents=[common], help="exact maximal common generalization")
    s.add_argument("instance")
    s.add_argument("--method", choices=("renamings", "matchings"), default="matchings")
    s.set_defaults(func=cmd_mcg)

    s = sub.add_parser("check-stability", parents=[common], help="search for a k-swap extension")
    s.add_argument("instance")
    s.add_argument("mapping", help="JSON list of [left, right] indices, or generalize --json output")
    s.add_argument("--k", required=True)
    s.set_defaults(func=cmd_check_stability)

    s = sub.add_parser("gen", parents=[common], help="generate random instances")
    s.add_argument("--class", dest="cls", type=int, choices=sorted(CLASSES), required=True)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("classify", parents=[common], help="metrics and matching classes")
    s.add_argument("instance")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("reduce", parents=[common], help="encode two graphs as an instance")
    s.add_argument("--g1", required=True)
    s.add_argument("--g2", required=True)
    s.add_argument("--decide", action="store_true")
    s.add_argument("--plain", action="store_true", help="omit nonedge literals (non-induced variant)")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("bench", parents=[common], help="engines versus oracles on generated batches")
    s.add_argument("--classes", default="1,2")
    s.add_argument("--per-class", type=int, default=100)
    s.add_argument("--k-values", default="0,2,4,inf")
    s.add_argument("--w", default="1")
    s.add_argument("--oracles", default="matchings")
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.add_argument("--out")
    s.add_argument("--hard", action="store_true", help="allow classes 3-6")
    s.add_argument("--full", action="store_true", help="all six classes, 1000 instances each")
    s.add_argument("--serial", action="store_true")
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (BudgetExceeded, GenerationExhausted) as exc:
        print(f"setgen: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"setgen: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, OSError, KeyError, SizeOrderError) as exc:
        print(f"setgen: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
