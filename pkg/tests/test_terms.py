import random

import pytest
from hypothesis import given, settings, strategies as st

from lamv.gen import random_term
from lamv.terms import (App, Hole, Lam, ParseError, TABLE, Var, alpha_eq,
                        app, canon, combinator, free_occurrences, free_vars,
                        fresh_name, hole_path, k_power, lam, omega_order,
                        parse, parse_context, plug, render, replace_at, size,
                        spine, substitute, subterm_at, subterms)

terms = st.integers(0, 2**32).map(
    lambda s: random_term(random.Random(s), 8))


def test_parse_basics():
    t = parse("\\x.\\y.x y z")
    assert alpha_eq(t, Lam("x", Lam("y", App(App(Var("x"), Var("y")), Var("z")))))
    # multi-binder sugar and left-associative application
    assert alpha_eq(parse("\\x y.x y"), parse("\\x.\\y.(x y)"))
    assert alpha_eq(parse("a b c"), App(App(Var("a"), Var("b")), Var("c")))
    assert alpha_eq(parse("#I"), Lam("x", Var("x")))


def test_parse_rejects_garbage():
    for bad in ("", "(", "\\.x", "x )", "\\X.x", "#NOPE", "[]"):
        with pytest.raises(ParseError):
            parse(bad)


def test_context_parsing():
    c = parse_context("(\\x.[]) y")
    assert hole_path(c) == ("L", "B")
    assert alpha_eq(plug(c, Var("x")), parse("(\\x.x) y"))  # capturing on purpose
    with pytest.raises(ParseError):
        parse("(\\x.[]) y")  # holes only belong in contexts


@given(terms)
@settings(max_examples=200)
def test_render_parse_roundtrip(t):
    assert alpha_eq(parse(render(t)), t)


@given(terms)
@settings(max_examples=100)
def test_fold_render_roundtrip(t):
    assert alpha_eq(parse(render(t, fold=True)), t)


def test_render_minimal_parens():
    assert render(parse("x (y z)")) == "x (y z)"
    assert render(parse("x y z")) == "x y z"
    assert render(parse("(\\x.x) y")) == "(\\x.x) y"
    assert render(parse("\\x.x y")) == "\\x.x y"


def test_spine():
    h, args = spine(parse("x a b c"))
    assert isinstance(h, Var) and h.name == "x" and len(args) == 3


def test_free_vars():
    assert free_vars(parse("\\x.x y (\\y.y z)")) == frozenset({"y", "z"})
    assert free_occurrences(parse("y x y z")) == ["y", "x", "z"]
    assert free_vars(TABLE["OMEGA"]) == frozenset()


def test_alpha_eq():
    assert alpha_eq(parse("\\x.x"), parse("\\y.y"))
    assert not alpha_eq(parse("\\x.\\y.x"), parse("\\x.\\y.y"))
    assert not alpha_eq(parse("x"), parse("y"))


def test_substitute_capture_avoidance():
    # substituting y into \y.x y must rename the binder
    out = substitute(Var("y"), "x", parse("\\y.x y"))
    assert alpha_eq(out, parse("\\w.y w"))
    assert "y" in free_vars(out)


def test_substitute_values():
    assert alpha_eq(substitute(TABLE["I"], "x", parse("x x")), parse("#I #I"))
    assert alpha_eq(substitute(Var("z"), "x", parse("\\x.x")), parse("\\x.x"))


@given(terms)
@settings(max_examples=100)
def test_substitute_fresh_variable_is_identity(t):
    fresh = fresh_name("q", free_vars(t))
    assert alpha_eq(substitute(Var("z"), fresh, t), t)


def test_paths_cover_all_subterms():
    t = parse("(\\x.x y) (z w)")
    seen = list(subterms(t))
    assert seen[0][0] == () and seen[0][1] is t
    for p, s in seen:
        assert subterm_at(t, p) is s
    paths = [p for p, _ in seen]
    assert paths == [(), ("L",), ("L", "B"), ("L", "B", "L"),
                     ("L", "B", "R"), ("R",), ("R", "L"), ("R", "R")]


def test_replace_at():
    t = parse("x (y z)")
    assert alpha_eq(replace_at(t, ("R", "L"), Var("q")), parse("x (q z)"))


def test_size():
    assert size(Var("x")) == 1
    assert size(parse("\\x.x x")) == 4


def test_table_and_combinators():
    assert alpha_eq(TABLE["OMEGA"], App(TABLE["DELTA"], TABLE["DELTA"]))
    assert alpha_eq(combinator("K^2"), k_power(2))
    assert alpha_eq(k_power(0), TABLE["I"])
    assert alpha_eq(omega_order(0), TABLE["OMEGA"])
    assert alpha_eq(omega_order(2), parse("\\a.\\b.#OMEGA"))
    assert alpha_eq(omega_order(None), TABLE["OMEGA_W"])
    assert alpha_eq(combinator("OMEGA_3"), omega_order(3))


@given(terms, terms)
@settings(max_examples=100)
def test_canon_decides_alpha_equality(a, b):
    assert (canon(a) == canon(b)) == alpha_eq(a, b)


def test_helpers():
    assert alpha_eq(lam(["x", "y"], Var("x")), parse("\\x.\\y.x"))
    assert alpha_eq(app(Var("a"), Var("b"), Var("c")), parse("a b c"))
    assert fresh_name("x", frozenset({"x", "x'"})) == "x''"
    assert isinstance(parse_context("[]"), Hole)
