"""Injective variable-to-variable mappings."""

from __future__ import annotations

from typing import Optional

from .terms import Compound, Const, Literal, Var, substitute


class Renaming:
    """An immutable, functional and injective map from variables to variables."""

    __slots__ = ("_fwd", "_hash")

    def __init__(self, bindings=()):
        fwd = dict(bindings)
        if len(set(fwd.values())) != len(fwd):
            raise ValueError("renaming is not injective")
        self._fwd = fwd
        self._hash = None

    @classmethod
    def _trusted(cls, fwd: dict) -> Renaming:
        r = cls.__new__(cls)
        r._fwd = fwd
        r._hash = None
        return r

    def __getitem__(self, v: Var) -> Var:
        return self._fwd[v]

    def get(self, v: Var, default=None):
        return self._fwd.get(v, default)

    def __contains__(self, v):
        return v in self._fwd

    def __len__(self):
        return len(self._fwd)

    def items(self):
        return sorted(self._fwd.items())

    def as_dict(self) -> dict:
        return dict(self._fwd)

    @property
    def domain(self) -> frozenset:
        return frozenset(self._fwd)

    @property
    def image(self) -> frozenset:
        return frozenset(self._fwd.values())

    def __eq__(self, other):
        return isinstance(other, Renaming) and self._fwd == other._fwd

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._fwd.items()))
        return self._hash

    def __str__(self):
        return "{" + ", ".join(f"{a}->{b}" for a, b in self.items()) + "}"

    def __repr__(self):
        return f"Renaming({self})"


def variant_renaming(a: Literal, b: Literal) -> Optional[Renaming]:
    """The renaming mapping ``a`` onto ``b``, or None if they are not variants."""
    if a.pred != b.pred:
        return None
    fwd: dict = {}
    bwd: dict = {}
    stack = list(zip(reversed(a.args), reversed(b.args)))
    while stack:
        s, t = stack.pop()
        if isinstance(s, Var):
            if not isinstance(t, Var):
                return None
            if fwd.setdefault(s, t) != t or bwd.setdefault(t, s) != s:
                return None
        elif isinstance(s, Const):
            if s != t:
                return None
        elif isinstance(s, Compound):
            if not isinstance(t, Compound) or s.functor != t.functor:
                return None
            stack.extend(zip(reversed(s.args), reversed(t.args)))
        else:
            raise TypeError(f"not a term: {s!r}")
    return Renaming._trusted(fwd)


def merge(r1: Renaming, r2: Renaming) -> Optional[Renaming]:
    """Union of two renamings, or None when the union is not a renaming."""
    if len(r1) < len(r2):
        r1, r2 = r2, r1
    fwd = dict(r1._fwd)
    img = set(fwd.values())
    for v, w in r2._fwd.items():
        cur = fwd.get(v)
        if cur is None:
            if w in img:
                return None
            fwd[v] = w
            img.add(w)
        elif cur != w:
            return None
    return Renaming._trusted(fwd)


def compatible(r1: Renaming, r2: Renaming) -> bool:
    f1, f2 = r1._fwd, r2._fwd
    if len(f1) > len(f2):
        f1, f2 = f2, f1
    img2 = None
    for v, w in f1.items():
        other = f2.get(v)
        if other is not None:
            if other != w:
                return False
            continue
        if img2 is None:
            img2 = set(f2.values())
        if w in img2:
            return False
    return True


def apply(r: Renaming, e):
    """Apply ``r`` to a term, literal or goal; unmapped variables stay put."""
    return substitute(e, r._fwd)


def invert(r: Renaming) -> Renaming:
    return Renaming._trusted({w: v for v, w in r._fwd.items()})


def compose(r1: Renaming, r2: Renaming) -> Renaming:
    """``e`` under the result equals ``apply(r2, apply(r1, e))`` on dom(r1)."""
    return Renaming({v: r2.get(w, w) for v, w in r1._fwd.items()})
