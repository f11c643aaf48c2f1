"""Terms, literals and goals.

A goal is an unordered, duplicate-free set of literals. Atoms and constraints
are both plain literals here; a constraint such as ``X = a`` is just the
literal ``=(X, a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Union

INFIX_OPS = ("=<", ">=", "=", "<", ">")


def is_variable_name(name: str) -> bool:
    return bool(name) and (name[0].isupper() or name[0] == "_")


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __post_init__(self):
        if not is_variable_name(self.name):
            raise ValueError(f"not a variable name: {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Symbol:
    """A functor or predicate symbol; ``f/1`` and ``f/2`` are distinct."""

    name: str
    arity: int

    def __str__(self):
        return f"{self.name}/{self.arity}"


@dataclass(frozen=True)
class Const:
    name: str

    @property
    def symbol(self) -> Symbol:
        return Symbol(self.name, 0)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Compound:
    functor: Symbol
    args: tuple

    def __post_init__(self):
        if self.functor.arity < 1 or len(self.args) != self.functor.arity:
            raise ValueError(f"{self.functor} applied to {len(self.args)} arguments")

    def __str__(self):
        return f"{self.functor.name}({','.join(map(str, self.args))})"


Term = Union[Var, Const, Compound]


def compound(name: str, *args: Term) -> Compound:
    return Compound(Symbol(name, len(args)), tuple(args))


@dataclass(frozen=True)
class Literal:
    pred: Symbol
    args: tuple

    def __post_init__(self):
        if len(self.args) != self.pred.arity:
            raise ValueError(f"{self.pred} applied to {len(self.args)} arguments")

    @classmethod
    def of(cls, name: str, *args: Term) -> Literal:
        return cls(Symbol(name, len(args)), tuple(args))

    @cached_property
    def text(self) -> str:
        if self.pred.arity == 0:
            return self.pred.name
        if self.pred.name in INFIX_OPS and self.pred.arity == 2:
            return f"{self.args[0]} {self.pred.name} {self.args[1]}"
        return f"{self.pred.name}({','.join(map(str, self.args))})"

    @cached_property
    def sort_key(self) -> tuple:
        return (self.pred.name, self.pred.arity, ",".join(map(str, self.args)))

    def __str__(self):
        return self.text

    def __lt__(self, other: Literal) -> bool:
        return self.sort_key < other.sort_key


@dataclass(frozen=True)
class Goal:
    """A finite set of literals, iterated in canonical order."""

    literals: frozenset = field(default_factory=frozenset)

    def __init__(self, literals: Iterable[Literal] = ()):
        object.__setattr__(self, "literals", frozenset(literals))

    @cached_property
    def ordered(self) -> tuple:
        return tuple(sorted(self.literals, key=lambda lit: lit.sort_key))

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.ordered)

    def __len__(self):
        return len(self.literals)

    def __contains__(self, lit):
        return lit in self.literals

    def __le__(self, other: Goal) -> bool:
        return self.literals <= other.literals

    def index(self, lit: Literal) -> int:
        return self.ordered.index(lit)

    def __str__(self):
        return ", ".join(lit.text for lit in self.ordered)

    def __repr__(self):
        return f"Goal({{{self}}})"


def vars_of(e) -> frozenset:
    """The set of variables occurring in a term, literal or goal."""
    out: set = set()
    _collect_vars(e, out)
    return frozenset(out)


def _collect_vars(e, out: set) -> None:
    if isinstance(e, Var):
        out.add(e)
    elif isinstance(e, Compound):
        for a in e.args:
            _collect_vars(a, out)
    elif isinstance(e, Literal):
        for a in e.args:
            _collect_vars(a, out)
    elif isinstance(e, Goal):
        for lit in e.literals:
            _collect_vars(lit, out)


def substitute(e, mapping: dict):
    """Replace variables of ``e`` according to ``mapping`` (Var -> Var)."""
    if isinstance(e, Var):
        return mapping.get(e, e)
    if isinstance(e, Const):
        return e
    if isinstance(e, Compound):
        return Compound(e.functor, tuple(substitute(a, mapping) for a in e.args))
    if isinstance(e, Literal):
        return Literal(e.pred, tuple(substitute(a, mapping) for a in e.args))
    if isinstance(e, Goal):
        return Goal(substitute(lit, mapping) for lit in e.literals)
    raise TypeError(f"cannot substitute into {type(e).__name__}")


def fresh_name(base: str, taken: set) -> str:
    k = 2
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def rename_apart(g1: Goal, g2: Goal) -> tuple[Goal, Goal]:
    """Rename the variables of ``g2`` that clash with ``g1``.

    ``g1`` is never touched. Clashing variables get ``<name>_<k>`` with the
    smallest ``k >= 2`` not used anywhere in either goal.
    """
    v1, v2 = vars_of(g1), vars_of(g2)
    clash = v1 & v2
    if not clash:
        return g1, g2
    taken = {v.name for v in v1 | v2}
    mapping = {}
    for v in sorted(clash):
        new = fresh_name(v.name, taken)
        taken.add(new)
        mapping[v] = Var(new)
    return g1, substitute(g2, mapping)
