"""Command-line front end.  Exit codes: 0 success / positive verdict,
1 negative verdict, 2 usage error, 3 Unknown.  LAMV_FUEL overrides the
default fuel."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import labelling, solvability, srs, strategies, theory
from .classify import (TermClass, UnderlineKind, active_components, classify,
                       chest_redexes, head_redexes, head_spine_redexes,
                       redexes, ribcage_redexes, underline)
from .solvability import (NoNormalFormError, Ordinal, OrderVerdict,
                          certify_unsolvable, genericity_experiment,
                          head_context_from_function_context, order,
                          solve_to_target)
from .strategies import Outcome, STRATEGIES, reduce
from .terms import (ParseError, Term, alpha_eq, parse, parse_context, plug,
                    render, TABLE)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3


def default_fuel() -> int:
    try:
        return max(1, int(os.environ.get("LAMV_FUEL", "10000")))
    except ValueError:
        return 10000


def _path_str(p) -> str:
    return "".join(p) or "root"


def _parse_term(text: str) -> Term:
    return parse(text)


def _read_context(path: str) -> Term:
    with open(path) as fh:
        return parse_context(fh.read())


def _parse_ordinal(text: str) -> Ordinal:
    text = text.strip()
    if text in ("omega", "w"):
        return Ordinal.omega()
    return Ordinal.finite(int(text))


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(args) -> int:
    t = _parse_term(args.term)
    classes = classify(t)
    for cls in TermClass:
        if cls in classes:
            print(cls.value)
    return EXIT_OK


def cmd_reduce(args) -> int:
    t = _parse_term(args.term)
    tr = reduce(t, args.strategy, args.fuel)
    if args.trace:
        for k, s in enumerate(tr.steps):
            print(json.dumps({"step": k, "rule": s.rule,
                              "path": "".join(s.path),
                              "term": render(s.result, fold=args.fold)}))
        print(json.dumps({"outcome": tr.outcome.value,
                          "term": render(tr.final, fold=args.fold)}))
    else:
        print(f"{tr.outcome.value} after {len(tr.steps)} steps:"
              f" {render(tr.final, fold=args.fold)}")
    return EXIT_OK


def cmd_order(args) -> int:
    v = order(_parse_term(args.term), args.fuel)
    if v.kind == "exact":
        print(f"order {v.ordinal} ({v.evidence})")
        return EXIT_OK
    if v.kind == "at_least":
        print(f"order at least {v.k} ({v.evidence})")
        return EXIT_UNKNOWN
    print(f"order unknown ({v.evidence})")
    return EXIT_UNKNOWN


def cmd_solve(args) -> int:
    m = _parse_term(args.term)
    target = _parse_term(args.target)
    try:
        ops = solve_to_target(m, target, args.calculus, args.fuel)
    except NoNormalFormError as e:
        print(f"NoNormalForm: {e}")
        return EXIT_NEGATIVE
    for op in ops:
        print(render(op))
    return EXIT_OK


def cmd_close_context(args) -> int:
    f = _read_context(args.context)
    m = _parse_term(args.term)
    n = _parse_term(args.target)
    h = head_context_from_function_context(f, m, n, args.fuel)
    print(render(h))
    return EXIT_OK


def cmd_genericity(args) -> int:
    c = _read_context(args.context)
    m = _parse_term(args.term)
    with open(args.xs) as fh:
        xs = [parse(line) for line in fh if line.strip()]
    report = genericity_experiment(c, m, _parse_ordinal(args.order), xs,
                                   args.calculus, args.fuel)
    if not report.applicable:
        print("inapplicable: the plugged term does not normalise")
        return EXIT_UNKNOWN
    print(f"normal form: {render(report.nf)}")
    for e in report.entries:
        print(f"{render(e.x)} | order={e.order.kind}"
              f" {e.order.ordinal or e.order.k or ''} |"
              f" expected_match={e.expected_match} | {e.observed} |"
              f" ok={e.ok}")
    return EXIT_NEGATIVE if report.failures else EXIT_OK


def cmd_label_trace(args) -> int:
    c = _read_context(args.context)
    m = _parse_term(args.mark)
    report = labelling.trace_report(
        c, m, args.strategy, args.fuel,
        lambda t: order(t, max(args.fuel, 500)))
    print(labelling.lrender(report.initial))
    for lt, p in report.steps:
        print(f"-> ({_path_str(p)}) {labelling.lrender(lt)}")
    print(f"outcome: {report.outcome.value}; max count {report.max_count};"
          f" marked order {report.marked_order};"
          f" checks {len(report.checks)}, violations"
          f" {len(report.violations)}, unverified {len(report.unverified)}")
    return EXIT_NEGATIVE if report.violations else EXIT_OK


def _oracle_from_args(args) -> theory.UnsolvabilityOracle:
    annotations = []
    if getattr(args, "annotate", None):
        with open(args.annotate) as fh:
            for line in fh:
                if not line.strip():
                    continue
                lhs, _, rhs = line.rpartition(":")
                annotations.append((parse(lhs), _parse_ordinal(rhs)))
    infinite = None
    if getattr(args, "yk", False):
        infinite = parse("#Y #K")
    return theory.UnsolvabilityOracle(annotations=annotations,
                                      infinite_term=infinite)


def cmd_omega_nf(args) -> int:
    t = _parse_term(args.term)
    out = theory.omega_nf(t, _oracle_from_args(args))
    if out is theory.Unknown:
        print("Unknown")
        return EXIT_UNKNOWN
    print(render(out))
    return EXIT_OK


def cmd_vtheory_eq(args) -> int:
    oracle = _oracle_from_args(args)
    v = theory.v_theory_equal(_parse_term(args.terma), _parse_term(args.termb),
                              oracle, args.fuel)
    print(f"{v.kind}: {v.evidence}")
    if v.kind == "provable":
        return EXIT_OK
    if v.kind == "refuted":
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def cmd_srs_check(args) -> int:
    with open(args.file) as fh:
        seq = [parse(line) for line in fh if line.strip()]
    try:
        ok, deriv = srs.is_standard_sequence(seq)
    except srs.IllegalSequence as e:
        print(f"illegal sequence: {e}")
        return EXIT_USAGE
    print("standard" if ok else "not standard")
    if args.explain:
        print(deriv)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_underline(args) -> int:
    t = _parse_term(args.term)
    kind = UnderlineKind[args.kind]
    for p in sorted(underline(t, kind)):
        print(_path_str(p))
    return EXIT_OK


# ---------------------------------------------------------------------------
# the golden suite


def _suite_cases():
    I, K, D = TABLE["I"], TABLE["K"], TABLE["DELTA"]
    OM, U, B = TABLE["OMEGA"], TABLE["U"], TABLE["B"]

    def glossary():
        expected = {  # term -> (classic nf?, value nf?)
            "I": (I, True, True), "K": (K, True, True),
            "DELTA": (D, True, True), "OMEGA": (OM, False, False),
            "U": (U, False, True), "B": (B, False, True),
        }
        for name, (t, k_nf, v_nf) in expected.items():
            if (reduce(t, "no", 10000).outcome is Outcome.NormalForm) != k_nf:
                return f"{name}: classic outcome mismatch"
            if (reduce(t, "vno", 10000).outcome is Outcome.NormalForm) != v_nf:
                return f"{name}: value outcome mismatch"
        return None

    def golden_trace():
        # The six published reducts of the marked-operand worked example.
        # The first of those steps substitutes an operand that is not a
        # value, so no sound value strategy can reproduce it; see the
        # decisions log.  The invariant half (max count 1, final I) holds.
        c = parse_context("(\\x.(\\y.#I)(x x)) []")
        m = parse("#I (\\x.\\y.x #OMEGA)")
        report = labelling.trace_report(c, m, "vno", 100,
                                        lambda t: order(t, 1000))
        if report.outcome is not Outcome.NormalForm:
            return "did not normalise"
        if not alpha_eq(labelling.erase(report.steps[-1][0]), I):
            return "final term is not I"
        if report.max_count != 1 or report.violations:
            return "count invariant failed"
        displayed = [
            "(\\x.(\\y.#I)(x x)) (#I (\\x.\\y.x #OMEGA))",
            "(\\y.#I)((#I (\\x.\\y.x #OMEGA)) (#I (\\x.\\y.x #OMEGA)))",
            "(\\y.#I)((\\x.\\y.x #OMEGA) (#I (\\x.\\y.x #OMEGA)))",
            "(\\y.#I)((\\x.\\y.x #OMEGA) (\\x.\\y.x #OMEGA))",
            "(\\y.#I)(\\y.(\\x.\\y.x #OMEGA) #OMEGA)",
            "#I",
        ]
        got = [labelling.erase(report.initial)] + [
            labelling.erase(lt) for lt, _ in report.steps]
        want = [parse(s) for s in displayed]
        if len(got) != len(want) or not all(
                alpha_eq(a, b) for a, b in zip(got, want)):
            return ("trace deviates from the published reducts"
                    " (known: first published step is not a value step)")
        return None

    def standardness():
        s1 = [parse("(\\x.(\\y.z y) #I)((\\y.z y) #K)"),
              parse("(\\x.(\\y.z y) #I)(z #K)"),
              parse("(\\x.z #I)(z #K)")]
        s2 = [parse("(\\x.(\\y.z y) #I)((\\y.z y) #K)"),
              parse("(\\x.z #I)((\\y.z y) #K)"),
              parse("(\\x.z #I)(z #K)")]
        s3 = [parse("(\\x.(\\y.x) z) #I"), parse("(\\x.x) #I"), parse("#I")]
        if not srs.is_standard_sequence(s1)[0]:
            return "first sequence rejected"
        if not srs.is_standard_sequence(s2)[0]:
            return "second sequence rejected"
        if srs.is_standard_sequence(s3)[0]:
            return "non-standard sequence accepted"
        return None

    def underlining():
        t = parse("\\x.(\\y.y ((\\z.z z) x)) x ((\\t.t) x)")
        ch = chest_redexes(t)
        rc = ribcage_redexes(t)
        if not (len(ch) == 2 and len(rc) == 3 and set(ch) <= set(rc)):
            return "chest/ribcage sets wrong"
        t2 = parse("\\x.(\\y.(\\z.x) (z z)) x ((\\t.t) x)")
        he = head_redexes(t2)
        hs = head_spine_redexes(t2)
        if not (len(he) == 1 and len(hs) == 2 and set(he) <= set(hs)):
            return "head/head-spine sets wrong"
        return None

    def witnesses():
        v1 = certify_unsolvable(TABLE["T1"], 300)
        if v1.kind != "solvable" or not alpha_eq(
                v1.nf, parse("(\\y.#DELTA)(z #I) #DELTA (z #I)")):
            return "T1 witness wrong"
        for bad in (TABLE["T2"], parse("\\x.#OMEGA"), OM):
            if certify_unsolvable(bad, 300).kind == "solvable":
                return "false witness"
        return None

    def closing():
        f = parse_context("(\\x.[]) #K")
        m = parse("x (y z (y #I)) (#OMEGA t)")
        n = parse("y z (y #I)")
        h = head_context_from_function_context(f, m, n)
        got = reduce(plug(h, m), "no", 10000).final
        want = parse("\\w.w (\\w.w) (\\v2 w.w #I v2)")
        return None if alpha_eq(got, want) else "closed context wrong"

    def negatives():
        if redexes(parse("(\\y.z)(x #DELTA)"), "V"):
            return "stuck term has a value redex"
        tr = reduce(parse("(\\x.(\\y.z)(x #DELTA)) #DELTA"), "vno", 1000)
        if tr.outcome is not Outcome.CycleDetected or any(
                alpha_eq(u, parse("z")) for u in tr.terms):
            return "confluence counterexample misbehaved"
        if reduce(parse("(\\x.#I) #OMEGA"), "vno", 1000).outcome \
                is Outcome.NormalForm:
            return "non-value operand was discarded"
        return None

    def theory_probes():
        oracle = theory.UnsolvabilityOracle()
        a = theory.v_theory_equal(parse("\\x.#OMEGA"),
                                  parse("\\x.(#I #I) #OMEGA"), oracle)
        b = theory.v_theory_equal(I, K, oracle)
        c = theory.v_theory_equal(U, parse("\\x.#OMEGA"), oracle)
        if a.kind != "provable":
            return "same-order collapse not provable"
        if b.kind != "refuted":
            return "distinct normal forms not refuted"
        if c.kind == "provable":
            return "solvable equated with diverging term"
        return None

    return [("glossary-table", glossary),
            ("golden-labelled-trace", golden_trace),
            ("standardness-examples", standardness),
            ("underlining-sets", underlining),
            ("solvability-witnesses", witnesses),
            ("closing-head-context", closing),
            ("negative-counterexamples", negatives),
            ("theory-equality-probes", theory_probes)]


def cmd_paper_suite(args) -> int:
    failures = 0
    for name, case in _suite_cases():
        err = case()
        if err is None:
            print(f"PASS {name}")
        else:
            print(f"FAIL {name}: {err}")
            failures += 1
    print(f"{failures} failure(s)")
    return EXIT_OK if failures == 0 else EXIT_NEGATIVE


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lamv", description="lambda-value calculus workbench")
    sub = ap.add_subparsers(dest="command", required=True)
    fuel = default_fuel()

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("classify", cmd_classify, help="term class membership")
    p.add_argument("term")

    p = add("reduce", cmd_reduce, help="reduce under a strategy")
    p.add_argument("--strategy", choices=STRATEGIES, default="vno")
    p.add_argument("--fuel", type=int, default=fuel)
    p.add_argument("--trace", action="store_true",
                   help="one JSON object per step")
    p.add_argument("--fold", action="store_true",
                   help="print glossary combinators as #NAME")
    p.add_argument("term")

    p = add("order", cmd_order, help="order of a term")
    p.add_argument("--fuel", type=int, default=min(fuel, 2000))
    p.add_argument("term")

    p = add("solve", cmd_solve, help="operands sending a term to a target")
    p.add_argument("--calculus", choices=["K"], default="K")
    p.add_argument("--target", required=True)
    p.add_argument("--fuel", type=int, default=fuel)
    p.add_argument("term")

    p = add("close-context", cmd_close_context,
            help="close a function context into a head context")
    p.add_argument("--context", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--fuel", type=int, default=fuel)

    p = add("genericity", cmd_genericity, help="irrelevant-subterm experiment")
    p.add_argument("--context", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--order", required=True)
    p.add_argument("--xs", required=True)
    p.add_argument("--calculus", choices=["K", "V"], default="V")
    p.add_argument("--fuel", type=int, default=min(fuel, 2000))

    p = add("label-trace", cmd_label_trace, help="counted trace with report")
    p.add_argument("--context", required=True)
    p.add_argument("--mark", required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="vno")
    p.add_argument("--fuel", type=int, default=min(fuel, 1000))

    p = add("omega-nf", cmd_omega_nf, help="collapse certified diverging parts")
    p.add_argument("--annotate", help="file of '<term> : <order>' lines")
    p.add_argument("--yk", action="store_true",
                   help="use #Y #K as the order-omega collapse target")
    p.add_argument("term")

    p = add("vtheory-eq", cmd_vtheory_eq, help="equality probe")
    p.add_argument("--annotate")
    p.add_argument("--fuel", type=int, default=2000)
    p.add_argument("terma")
    p.add_argument("termb")

    p = add("srs-check", cmd_srs_check, help="standard-sequence check")
    p.add_argument("--explain", action="store_true")
    p.add_argument("file")

    p = add("underline", cmd_underline, help="underlined positions")
    p.add_argument("--kind", choices=[k.name for k in UnderlineKind],
                   required=True)
    p.add_argument("term")

    add("paper-suite", cmd_paper_suite, help="run all golden cases")
    return ap


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (ParseError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
