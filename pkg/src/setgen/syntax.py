"""Reading and writing goals.

Grammar (whitespace is insignificant, surrounding braces are optional)::

    goal    := [ literal ("," literal)* ]
    literal := name | name "(" term ("," term)* ")" | term OP term
    term    := VARIABLE | name | name "(" term ("," term)* ")"
    OP      := "=" | "<" | ">" | "=<" | ">="

Identifiers starting with an uppercase letter or underscore are variables;
everything else (lowercase identifiers, integers) is a symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import Compound, Const, Goal, Literal, Symbol, Var, is_variable_name

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*|-?\d+)
  | (?P<op>=<|>=|=|<|>)
  | (?P<punct>[(),{}])
    """,
    re.VERBOSE,
)


class GoalSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GoalSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rindex("\n") + 1
        else:
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str):
        raise GoalSyntaxError(msg, self.cur.line, self.cur.col)

    def accept(self, text: str) -> bool:
        if self.cur.text == text and self.cur.kind != "eof":
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.error(f"expected {text!r}, found {self.cur.text or 'end of input'!r}")

    def goal(self) -> Goal:
        braced = self.accept("{")
        lits = []
        closing = "}" if braced else ""
        if not (self.cur.kind == "eof" or (braced and self.cur.text == "}")):
            lits.append(self.literal())
            while self.accept(","):
                lits.append(self.literal())
        if braced:
            self.expect("}")
        if self.cur.kind != "eof":
            self.error(f"unexpected {self.cur.text!r}" + (f", expected {closing!r}" if closing else ""))
        return Goal(lits)

    def literal(self) -> Literal:
        left = self.term()
        if self.cur.kind == "op":
            op = self.cur.text
            self.i += 1
            right = self.term()
            return Literal(Symbol(op, 2), (left, right))
        if isinstance(left, Var):
            self.error(f"variable {left.name} cannot be a literal")
        if isinstance(left, Const):
            return Literal(Symbol(left.name, 0), ())
        return Literal(left.functor, left.args)

    def term(self):
        tok = self.cur
        if tok.kind != "name":
            self.error(f"expected a term, found {tok.text or 'end of input'!r}")
        self.i += 1
        if is_variable_name(tok.text):
            return Var(tok.text)
        if self.accept("("):
            args = [self.term()]
            while self.accept(","):
                args.append(self.term())
            self.expect(")")
            return Compound(Symbol(tok.text, len(args)), tuple(args))
        return Const(tok.text)


def parse_goal(text: str) -> Goal:
    return _Parser(text).goal()


def parse_literal(text: str) -> Literal:
    goal = parse_goal(text)
    if len(goal) != 1:
        raise ValueError(f"expected exactly one literal, got {len(goal)}")
    return next(iter(goal))


def print_goal(g: Goal) -> str:
    return str(g)

