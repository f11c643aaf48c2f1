from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import given

from setgen.isip import UGraph, graph_to_goal
from setgen.syntax import GoalSyntaxError, parse_goal, parse_literal, print_goal
from setgen.terms import Compound, Const, Goal, Literal, Var, rename_apart, substitute, vars_of

from support import goals


def test_parse_simple_goal():
    g = parse_goal("f(X), g(X,Y)")
    assert g == Goal([Literal.of("f", Var("X")), Literal.of("g", Var("X"), Var("Y"))])
    assert len(g) == 2


def test_duplicates_collapse():
    assert len(parse_goal("f(X), f(X)")) == 1


def test_constants_and_compound_terms():
    g = parse_goal("f(a), p(h(X,b))")
    f_lit, p_lit = g.ordered
    assert f_lit.args == (Const("a"),)
    (inner,) = p_lit.args
    assert isinstance(inner, Compound)
    assert inner.args == (Var("X"), Const("b"))


def test_same_name_different_arity_are_distinct():
    g = parse_goal("p(X), p(X,Y)")
    assert len({lit.pred for lit in g}) == 2


def test_infix_constraints_and_braces():
    g = parse_goal("{ X = a, 3 < X, X >= Y }")
    assert Literal.of("=", Var("X"), Const("a")) in g
    assert "X = a" in print_goal(g)


def test_integers_are_constants():
    (lit,) = parse_goal("f(42)")
    assert lit.args == (Const("42"),)


def test_syntax_error_has_position():
    with pytest.raises(GoalSyntaxError) as info:
        parse_goal("f(X,\n  g(")
    assert info.value.line == 2
    assert info.value.column > 0


@pytest.mark.parametrize("bad", ["f(X", "f(X))", "f(,)", "f(X) g(Y)", "X"])
def test_malformed_goals_raise(bad):
    with pytest.raises(GoalSyntaxError):
        parse_goal(bad)


def test_print_empty_goal():
    assert print_goal(Goal()) == ""
    assert parse_goal("") == Goal()


def test_print_is_canonical():
    assert print_goal(parse_goal("g(X,Y), f(X)")) == "f(X), g(X,Y)"


def test_order_insensitive_equality():
    assert parse_goal("h(Y,Z), f(X), g(X,Y)") == parse_goal("g(X,Y), h(Y,Z), f(X)")


def test_round_trip_graph_goal():
    g = graph_to_goal(UGraph({1, 2, 3}, [(1, 2), (2, 3)]))
    assert parse_goal(print_goal(g)) == g


def test_vars_of():
    assert vars_of(parse_literal("f(a)")) == set()
    assert vars_of(parse_literal("h(Y,Z)")) == {Var("Y"), Var("Z")}
    assert vars_of(parse_goal("f(X), f(Z), g(X,Y), h(Y,Z)")) == {Var("X"), Var("Y"), Var("Z")}
    assert vars_of(parse_literal("p(h(X,b))")) == {Var("X")}


def test_variable_naming_convention():
    with pytest.raises(ValueError):
        Var("x")
    assert Var("_G1").name == "_G1"


class TestRenameApart:
    def test_disjoint_unchanged(self):
        a, b = parse_goal("f(X)"), parse_goal("g(Y)")
        assert rename_apart(a, b) == (a, b)

    def test_clash_gets_suffix(self):
        a, b = rename_apart(parse_goal("f(X)"), parse_goal("g(X)"))
        assert a == parse_goal("f(X)")
        assert b == parse_goal("g(X_2)")

    def test_first_goal_untouched(self):
        g1 = parse_goal("f(X), g(X,Y)")
        a, b = rename_apart(g1, parse_goal("f(X)"))
        assert a == g1
        assert not vars_of(a) & vars_of(b)

    def test_fresh_name_skips_taken_suffixes(self):
        _, b = rename_apart(parse_goal("f(X)"), parse_goal("g(X, X_2)"))
        assert b == parse_goal("g(X_3, X_2)")

    def test_deterministic(self):
        args = (parse_goal("f(X), g(Y,Z)"), parse_goal("g(Z,Y), f(X)"))
        assert rename_apart(*args) == rename_apart(*args)


@given(goals())
def test_print_parse_round_trip(g):
    assert parse_goal(print_goal(g)) == g


@given(goals(), goals())
def test_rename_apart_gives_disjoint_variants(g1, g2):
    a, b = rename_apart(g1, g2)
    assert a == g1
    assert not vars_of(a) & vars_of(b)
    src, dst = sorted(vars_of(g2)), sorted(vars_of(b))
    assert len(src) == len(dst)
    # some bijection between the variable sets maps g2 onto b
    assert any(
        Goal(substitute(lit, dict(zip(src, image))) for lit in g2) == b
        for image in permutations(dst)
    )
