import random

import pytest
from hypothesis import given, settings, strategies as st

from lamv.classify import is_nf, is_vnf
from lamv.gen import random_value
from lamv.solvability import (NoNormalFormError, OMEGA, Ordinal, OrderVerdict,
                              PreconditionViolation, certify_unsolvable,
                              default_pool, function_context_for_target,
                              genericity_experiment,
                              head_context_from_function_context,
                              head_operand_count, order, solve_to_target,
                              witness_contexts)
from lamv.strategies import Outcome, reduce
from lamv.terms import (TABLE, Var, alpha_eq, free_vars, k_power,
                        omega_order, parse, parse_context, plug, render,
                        substitute)


def test_ordinal_arithmetic():
    assert Ordinal.finite(2) + Ordinal.finite(3) == Ordinal.finite(5)
    assert Ordinal.finite(2) + OMEGA == OMEGA
    assert OMEGA + Ordinal.finite(2) == OMEGA
    assert Ordinal.finite(3) <= OMEGA
    assert not OMEGA <= Ordinal.finite(3)
    assert str(OMEGA) == "omega" and str(Ordinal.finite(4)) == "4"


def test_order_of_known_terms():
    table = {
        "#OMEGA": Ordinal.finite(0),
        "\\x.#OMEGA": Ordinal.finite(1),
        "\\x.\\y.#OMEGA": Ordinal.finite(2),
        "#OMEGA_W": OMEGA,
        "#T1": Ordinal.finite(0),
        "#T2": Ordinal.finite(0),
        "x #OMEGA": Ordinal.finite(0),
        "(\\x.\\y.#OMEGA) #I": Ordinal.finite(1),
    }
    for text, want in table.items():
        v = order(parse(text), 500)
        assert v.kind == "exact" and v.ordinal == want, text


def test_order_of_normalising_terms_reports_evidence():
    v = order(TABLE["I"], 100)
    assert v.kind == "exact" and v.ordinal == Ordinal.finite(1)
    assert "normal form" in v.evidence
    v = order(parse("x y"), 100)
    assert v.ordinal == Ordinal.finite(0) and "normal form" in v.evidence


def test_order_unknown_on_growing_terms():
    v = order(parse("#Y #K"), 200)
    assert v.kind in ("unknown", "at_least")


@given(st.integers(0, 2**32))
@settings(max_examples=100, deadline=None)
def test_order_preserved_by_value_substitution(seed):
    rng = random.Random(seed)
    v = random_value(rng, 4)
    family = [TABLE["OMEGA"], omega_order(1), omega_order(2), omega_order(3),
              omega_order(None), parse("#OMEGA x"), parse("\\y.#OMEGA x")]
    for t in family:
        before = order(t, 400)
        after = order(substitute(v, "x", t), 400)
        assert before.kind == "exact" == after.kind
        assert before.ordinal == after.ordinal


def test_witness_contexts_bind_free_variables():
    t = parse("x #OMEGA")
    cs = witness_contexts(t, default_pool(), max_operands=1)
    for c in cs:
        assert not (free_vars(plug(c, t)) - free_vars(c))


def test_certify_solvable_t1():
    v = certify_unsolvable(TABLE["T1"], 300)
    assert v.kind == "solvable"
    assert alpha_eq(v.nf, parse("(\\y.#DELTA) (z #I) #DELTA (z #I)"))
    assert is_vnf(v.nf)
    # the witness context really does the job
    tr = reduce(plug(v.context, TABLE["T1"]), "vno", 2000)
    assert tr.outcome is Outcome.NormalForm and alpha_eq(tr.final, v.nf)


def test_never_certifies_a_witness_for_unsolvables():
    for t in (TABLE["T2"], parse("\\x.#OMEGA"), TABLE["OMEGA"]):
        v = certify_unsolvable(t, 300)
        assert v.kind != "solvable"


def test_certify_unsolvable_omega():
    v = certify_unsolvable(TABLE["OMEGA"], 300)
    assert v.kind == "unsolvable" and v.order == Ordinal.finite(0)


def test_certify_normal_form_is_solvable_immediately():
    v = certify_unsolvable(parse("\\x.x y"), 100)
    assert v.kind == "solvable"


def test_solve_to_target_known_shapes():
    # \x.x: a single operand, the target itself (as K^0 target)
    ops = solve_to_target(TABLE["I"], Var("q"))
    got = reduce(plug_ops(TABLE["I"], ops), "no", 1000).final
    assert alpha_eq(got, Var("q"))
    # \x.\y.x: the head position receives the target, padded with I
    ops = solve_to_target(TABLE["K"], Var("q"))
    assert len(ops) == 2
    assert alpha_eq(ops[1], TABLE["I"])
    got = reduce(plug_ops(TABLE["K"], ops), "no", 1000).final
    assert alpha_eq(got, Var("q"))


def plug_ops(m, ops):
    out = m
    for o in ops:
        from lamv.terms import App
        out = App(out, o)
    return out


def test_solve_to_target_eats_head_operands():
    # \a.\b.a I b: head applies two operands, K^2 discards them
    m = parse("\\a.\\b.a #I b")
    ops = solve_to_target(m, Var("q"))
    got = reduce(plug_ops(m, ops), "no", 2000).final
    assert alpha_eq(got, Var("q"))


def test_solve_to_target_requires_closed_nf():
    with pytest.raises(PreconditionViolation):
        solve_to_target(parse("x y"), Var("q"))
    with pytest.raises(NoNormalFormError):
        solve_to_target(TABLE["OMEGA"], Var("q"))


@given(st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_solve_to_target_random_closed_nfs(seed):
    rng = random.Random(seed)
    m = random_closed_nf(rng)
    ops = solve_to_target(m, Var("q"))
    got = reduce(plug_ops(m, ops), "no", 4000)
    assert got.outcome is Outcome.NormalForm
    assert alpha_eq(got.final, Var("q"))


def random_closed_nf(rng):
    """A random closed classic normal form \\x1..xn.xi M1..Mk."""
    n = rng.randint(1, 3)
    binders = [f"v{i}" for i in range(n)]
    head = rng.choice(binders)
    args = [Var(rng.choice(binders)) for _ in range(rng.randint(0, 2))]
    body = Var(head)
    for a in args:
        from lamv.terms import App
        body = App(body, a)
    from lamv.terms import lam
    return lam(binders, body)


def test_head_operand_count():
    assert head_operand_count(parse("y z (y #I)"), "y") == 2
    assert head_operand_count(parse("\\y.y z"), "y") == 0  # bound, not free


def test_function_context_for_target():
    m = parse("\\a.a x")
    f = function_context_for_target(m, Var("k"))
    tr = reduce(plug(f, m), "no", 2000)
    assert tr.outcome is Outcome.NormalForm
    assert "k" in free_vars(tr.final)


def test_head_context_worked_example():
    f = parse_context("(\\x.[]) #K")
    m = parse("x (y z (y #I)) (#OMEGA t)")
    n = parse("y z (y #I)")
    h = head_context_from_function_context(f, m, n)
    want = parse("\\w.w (\\w.w) (\\v2.\\w.w #I v2)")
    got = reduce(plug(h, m), "no", 10000)
    assert got.outcome is Outcome.NormalForm
    assert alpha_eq(got.final, want)
    assert is_nf(got.final)


def test_genericity_classic_calculus():
    # c[.] = (\x.\u.u) [.]: the hole is erased, any x gives the same nf
    c = parse_context("(\\x.\\u.u) []")
    xs = [TABLE["I"], TABLE["K"], Var("q")]
    r = genericity_experiment(c, TABLE["OMEGA"], Ordinal.finite(0), xs, "K")
    assert r.applicable and not r.failures


def test_genericity_value_calculus_orders_matter():
    # c[.] = (\x.#I) [.]: in the value calculus the operand must normalise,
    # so substitutes of order >= that of the marked term keep the result
    c = parse_context("(\\x.#I) []")
    xs = [TABLE["I"], TABLE["K"], parse("\\x.\\y.y")]
    r = genericity_experiment(c, parse("\\x.#OMEGA"), Ordinal.finite(1), xs,
                              "V")
    assert r.applicable
    assert not r.failures
