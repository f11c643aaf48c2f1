"""Induced subgraph isomorphism as a generalization problem.

A graph becomes a goal with one ``node(Vx)`` literal per vertex and, for
every undirected edge ``{x, y}``, both ``edge(Vx,Vy)`` and ``edge(Vy,Vx)``.
That encoding only forces edges onto edges, so deciding "the first goal is
a maximal common generalization" answers the (non-induced) subgraph
question. To decide the *induced* problem the reduction also emits
``nonedge(Vx,Vy)`` for every ordered pair of distinct non-adjacent vertices,
which forces non-edges onto non-edges as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from pathlib import Path

from .errors import BudgetExceeded
from .genmodel import GenContext
from .oracles import DEFAULT_BUDGET, OracleBudget, mcg_by_renamings
from .terms import Goal, Literal, Var, rename_apart


class SizeOrderError(ValueError):
    pass


@dataclass(frozen=True)
class UGraph:
    vertices: frozenset
    edges: frozenset  # of frozenset({u, v})

    def __init__(self, vertices, edges=(), allow_loops: bool = False):
        vs = frozenset(vertices)
        es = frozenset(frozenset(e) for e in edges)
        for e in es:
            if not e <= vs:
                raise ValueError(f"edge {sorted(e)} has an endpoint outside the vertex set")
            if len(e) == 1 and not allow_loops:
                raise ValueError(f"self-loop on {next(iter(e))}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def __len__(self):
        return len(self.vertices)


def _var(x) -> Var:
    return Var(f"V{x}")


def graph_to_goal(g: UGraph, nonedges: bool = False) -> Goal:
    lits = [Literal.of("node", _var(x)) for x in g.vertices]
    for e in g.edges:
        if len(e) == 1:
            (x,) = e
            lits.append(Literal.of("edge", _var(x), _var(x)))
            continue
        x, y = sorted(e)
        lits.append(Literal.of("edge", _var(x), _var(y)))
        lits.append(Literal.of("edge", _var(y), _var(x)))
    if nonedges:
        for x, y in permutations(sorted(g.vertices), 2):
            if not g.adjacent(x, y):
                lits.append(Literal.of("nonedge", _var(x), _var(y)))
    return Goal(lits)


def reduce_isip(g1: UGraph, g2: UGraph, induced: bool = True) -> tuple[Goal, Goal]:
    """Encode both graphs as renamed-apart goals (``induced`` adds non-edges)."""
    if len(g1) > len(g2):
        raise SizeOrderError(f"first graph has {len(g1)} vertices, second only {len(g2)}")
    return rename_apart(graph_to_goal(g1, induced), graph_to_goal(g2, induced))


def decide_isip_direct(g1: UGraph, g2: UGraph, induced: bool = True, max_vertices: int = 8) -> bool:
    """Try every injective vertex map; exact but exponential."""
    if max(len(g1), len(g2)) > max_vertices:
        raise BudgetExceeded(f"graphs larger than {max_vertices} vertices")
    if len(g1) > len(g2):
        return False
    v1 = sorted(g1.vertices)
    for image in permutations(sorted(g2.vertices), len(v1)):
        f = dict(zip(v1, image))
        ok = True
        for i, x in enumerate(v1):
            for y in v1[i:]:
                e1 = g1.adjacent(x, y)
                e2 = g2.adjacent(f[x], f[y])
                if (e1 != e2) if induced else (e1 and not e2):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def decide_isip_via_mcg(g1: UGraph, g2: UGraph, budget: OracleBudget = DEFAULT_BUDGET,
                        induced: bool = True) -> bool:
    # every subset of a full match is a valid matching here, so enumerate
    # vertex (variable) maps rather than literal matchings
    a, b = reduce_isip(g1, g2, induced)
    return len(mcg_by_renamings(GenContext(a, b), budget)) == len(a)


def read_graph(path) -> UGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def parse_graph(text: str) -> UGraph:
    """DIMACS-like: ``p <n>`` header (vertices 1..n) then one ``u v`` edge per line."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            n = int(parts[-1])
            continue
        if parts[0] == "e":
            parts = parts[1:]
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError("missing 'p <nVertices>' header")
    return UGraph(range(1, n + 1), edges)


def format_graph(g: UGraph) -> str:
    lines = [f"p {len(g)}"]
    lines += [" ".join(map(str, sorted(e))) for e in sorted(g.edges, key=sorted)]
    return "\n".join(lines) + "\n"
