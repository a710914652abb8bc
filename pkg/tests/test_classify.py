import random

from hypothesis import given, settings, strategies as st

from lamv.classify import (ChnfShape, TermClass, UnderlineKind,
                           active_components, chest_redexes, chnf_shape,
                           classify, head_redexes, head_spine_redexes,
                           is_chnf, is_hnf, is_nf, is_redex, is_stuck,
                           is_val, is_vnf, is_vwnf, redexes, ribcage_redexes,
                           underline)
from lamv.gen import random_term
from lamv.terms import TABLE, parse

terms = st.integers(0, 2**32).map(
    lambda s: random_term(random.Random(s), 9))

TC = TermClass


def names(t):
    return {c.value for c in classify(t)}


def test_membership_table():
    # hand-derived memberships for a gallery of shapes
    gallery = {
        "x": {"Val", "NF", "HNF", "VNF", "CHNF", "VWNF"},
        "\\x.x": {"Val", "NF", "HNF", "VNF", "CHNF", "VWNF"},
        "x y": {"Neu", "NF", "HNF", "NeuV", "VNF", "Stuck", "CHNF",
                "VWNF", "NeuW"},
        "(\\y.z)(x #DELTA)": {"NeuV", "Block", "VNF", "Stuck", "BlockNF",
                              "CHNF", "VWNF", "NeuW"},
        "(\\y.z)(x #DELTA) w": {"NeuV", "VNF", "Stuck", "CHNF",
                                "VWNF", "NeuW"},
        "x #OMEGA": {"Neu", "HNF", "NeuV"},
        "#OMEGA": set(),
        "(\\x.x) y": set(),
        "\\x.x #OMEGA": {"Val", "HNF", "VWNF"},
        "\\x.#OMEGA": {"Val", "VWNF"},
    }
    for text, want in gallery.items():
        assert names(parse(text)) == want, text


def test_block_needs_neutral_operand():
    assert "Block" in names(parse("(\\y.y)(x z)"))
    assert "Block" not in names(parse("(\\y.y) x"))       # operand is a value
    assert "Block" not in names(parse("(\\y.y)(#I #I)"))  # operand is a redex


def test_redexes_by_calculus():
    t = parse("(\\x.x)((\\y.y) (z w))")
    assert redexes(t, "K") == [(), ("R",)]
    # only the inner application has a non-value operand
    assert redexes(t, "V") == []
    assert redexes(parse("(\\x.x) #DELTA"), "V") == [()]
    assert is_redex(parse("(\\x.x) y"), "V")
    assert not is_redex(parse("(\\x.x) (y z)"), "V")


@given(terms)
@settings(max_examples=300)
def test_vnf_means_no_value_redexes(t):
    assert is_vnf(t) == (redexes(t, "V") == [])


@given(terms)
@settings(max_examples=300)
def test_nf_means_no_classic_redexes(t):
    assert is_nf(t) == (redexes(t, "K") == [])


@given(terms)
@settings(max_examples=300)
def test_grammar_inclusions(t):
    if is_nf(t):
        assert is_hnf(t) and is_vnf(t)
    if is_vnf(t):
        assert is_chnf(t)
    if is_val(t):
        assert is_vwnf(t)
    if is_stuck(t):
        assert is_vnf(t) and is_chnf(t)
    if is_chnf(t):
        assert is_vwnf(t)


def test_underline_weak_value():
    # weak value marking stops at abstractions and visits both app sides
    t = parse("(\\x.x x) ((\\y.y) z)")
    marks = underline(t, UnderlineKind.bv)
    assert ("L",) in marks and ("R", "L") in marks
    assert not any(p[:1] == ("L",) and len(p) > 1 for p in marks)


def test_underline_redex_sets_value_example():
    t = parse("\\x.(\\y.y ((\\z.z z) x)) x ((\\t.t) x)")
    ch = chest_redexes(t)
    rc = ribcage_redexes(t)
    assert len(ch) == 2 and len(rc) == 3
    assert set(ch) <= set(rc)
    # the extra ribcage redex sits under the operator's binder
    extra = (set(rc) - set(ch)).pop()
    assert "B" in extra[len(("B", "L", "L")):] or "B" in extra


def test_underline_redex_sets_classic_example():
    t = parse("\\x.(\\y.(\\z.x) (z z)) x ((\\t.t) x)")
    he = head_redexes(t)
    hs = head_spine_redexes(t)
    assert len(he) == 1 and len(hs) == 2
    assert set(he) <= set(hs)


def test_underline_against_explicit_sets():
    t = parse("(\\x.x x) ((\\y.y) z)")
    # the operator's lambda is marked, making the root a family redex
    assert underline(t, UnderlineKind.bn) == {("L",)}
    assert underline(t, UnderlineKind.he) >= underline(t, UnderlineKind.bn)
    assert underline(t, UnderlineKind.hs) >= underline(t, UnderlineKind.he)
    assert underline(t, UnderlineKind.rc) >= underline(t, UnderlineKind.ch)


@given(terms)
@settings(max_examples=200)
def test_chest_within_ribcage_and_head_within_spine(t):
    assert set(chest_redexes(t)) <= set(ribcage_redexes(t))
    assert set(head_redexes(t)) <= set(head_spine_redexes(t))
    assert set(chest_redexes(t)) <= set(redexes(t, "V"))
    assert set(head_redexes(t)) <= set(redexes(t, "K"))


def test_active_components():
    # a chnf term has no active components
    assert active_components(parse("\\x.x y"), "V") == []
    # root is chnf; the non-chnf abstractions below are the components
    comps = active_components(parse("x (\\y.#OMEGA) (\\z.(\\w.w) #OMEGA)"),
                              "V")
    paths = [p for p, _ in comps]
    assert paths == [("L", "R"), ("R",)]
    # a non-chnf root is its own (sole, maximal) active component
    assert [p for p, _ in active_components(parse("x #OMEGA"), "V")] == [()]


def test_chnf_shape():
    s = chnf_shape(parse("\\a.\\b.(\\y.a y) (b #I c) d"))
    assert s is not None
    assert list(s.binders) == ["a", "b"]
    assert s.head == "b"
    assert chnf_shape(parse("#OMEGA")) is None
    plain = chnf_shape(parse("\\x.x y"))
    assert plain.head == "x" and list(plain.layers) == []
