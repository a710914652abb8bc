"""Order computation, bounded unsolvability certification, the constructive
solving recipes, and the partial-genericity experiment harness.

The order of a term is how many binders value conversion can expose in
front of it: a natural number, or omega when the count is unbounded.
Everything here is fuel-bounded; Unknown is an honest first-class verdict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .classify import is_nf
from .strategies import Outcome, reduce, step
from .terms import (App, Hole, Lam, Term, Var, alpha_eq, app, canon,
                    free_occurrences, free_vars, fresh_name, k_power, lam,
                    parse, plug, render, size, spine, substitute, TABLE)


@dataclass(frozen=True)
class Ordinal:
    """A natural number or omega (n is None).  Addition is the ordinal one
    restricted to our use: finite + omega = omega."""

    n: Optional[int]

    @staticmethod
    def finite(n: int) -> "Ordinal":
        return Ordinal(n)

    @staticmethod
    def omega() -> "Ordinal":
        return Ordinal(None)

    @property
    def is_omega(self) -> bool:
        return self.n is None

    def __add__(self, other: "Ordinal") -> "Ordinal":
        if other.is_omega or self.is_omega:
            return Ordinal.omega()
        return Ordinal(self.n + other.n)

    def __le__(self, other: "Ordinal") -> bool:
        if other.is_omega:
            return True
        if self.is_omega:
            return False
        return self.n <= other.n

    def __lt__(self, other: "Ordinal") -> bool:
        return self <= other and self != other

    def __str__(self) -> str:
        return "omega" if self.is_omega else str(self.n)


OMEGA = Ordinal.omega()


@dataclass(frozen=True)
class OrderVerdict:
    kind: str  # exact | at_least | unknown
    ordinal: Optional[Ordinal] = None
    k: Optional[int] = None
    evidence: str = ""

    @staticmethod
    def exact(o: Ordinal, evidence: str) -> "OrderVerdict":
        return OrderVerdict("exact", ordinal=o, evidence=evidence)

    @staticmethod
    def at_least(k: int, evidence: str) -> "OrderVerdict":
        return OrderVerdict("at_least", k=k, evidence=evidence)

    @staticmethod
    def unknown(evidence: str) -> "OrderVerdict":
        return OrderVerdict("unknown", evidence=evidence)


@dataclass(frozen=True)
class SolvabilityVerdict:
    kind: str  # solvable | unsolvable | unknown
    context: Optional[Term] = None
    nf: Optional[Term] = None
    order: Optional[Ordinal] = None
    evidence: str = ""


class NoNormalFormError(ValueError):
    """Normal-order reduction certified divergence or ran out of fuel."""


def order(t: Term, fuel: int = 1000) -> OrderVerdict:
    """Strip binders exposed by value-normal-order reduction.

    Exact(n) when the residue after n binders is either a non-abstraction
    normal form or revisits itself (a cycle without exposing more binders);
    Exact(omega) when an alpha-equal residue reappears behind a strictly
    longer binder prefix; otherwise AtLeast/Unknown on fuel exhaustion.
    """
    n = 0
    cur = t
    history: dict = {}
    size_cap = max(600, 10 * size(t))
    for spent in range(fuel + 1):
        if size(cur) > size_cap:
            # runaway growth: stop early, same verdicts as fuel exhaustion
            break
        while isinstance(cur, Lam):
            n += 1
            cur = cur.body
        key = canon(cur)
        if key in history:
            prev = history[key]
            if prev < n:
                return OrderVerdict.exact(
                    OMEGA, f"residue repeats with binder prefix {prev}->{n}")
            return OrderVerdict.exact(
                Ordinal.finite(n),
                f"residue cycles after {n} binders (order-0 residue)")
        history[key] = n
        if spent == fuel:
            break
        nxt = step(cur, "vno")
        if nxt is None:
            return OrderVerdict.exact(
                Ordinal.finite(n),
                f"residue is a non-abstraction normal form after {n} binders")
        cur = nxt[0]
    if n > 0:
        return OrderVerdict.at_least(n, "fuel exhausted after exposing binders")
    return OrderVerdict.unknown("fuel exhausted, no binder exposed")


# ---------------------------------------------------------------------------
# unsolvability certification

def default_pool() -> list[Term]:
    return [
        TABLE["I"],
        TABLE["K"],
        TABLE["DELTA"],
        App(TABLE["K"], TABLE["I"]),
        parse("\\x.z #I"),          # open value: frees a blocked operand

        parse("\\x.(\\y.y) (z #K)"),
        Var("w"),
        parse("\\x.w x"),
    ]


def _freshen(t: Term, avoid: frozenset[str]) -> Term:
    out = t
    for v in free_occurrences(t):
        if v in avoid:
            out = substitute(Var(fresh_name(v, avoid | free_vars(out))), v, out)
    return out


def witness_contexts(t: Term, pool: list[Term], max_operands: int = 3):
    """Candidate function contexts (\\ over FV(t)) . [] applied to pool picks."""
    fvs = sorted(free_vars(t))
    if len(fvs) > max_operands:
        return
    avoid = free_vars(t)
    safe_pool = [_freshen(v, avoid) for v in pool]
    prefix: Term = lam(fvs, Hole()) if fvs else Hole()
    if fvs:
        for picks in itertools.product(safe_pool, repeat=len(fvs)):
            yield app(prefix, *picks)
    else:
        for v in safe_pool:
            yield App(prefix, v)


def certify_unsolvable(t: Term, fuel: int = 500,
                       pool: Optional[list[Term]] = None) -> SolvabilityVerdict:
    """Fuel-bounded solvability probe.

    Solvable as soon as t itself, or some generated function context around
    it, reaches a value normal form.  Unsolvable only with a cycle-certified
    order verdict and every probe failing.  Unknown otherwise.
    """
    if pool is None:
        pool = default_pool()
    cap = max(600, 10 * size(t))
    tr = reduce(t, "vno", fuel, max_size=cap)
    if tr.outcome is Outcome.NormalForm:
        return SolvabilityVerdict("solvable", context=Hole(), nf=tr.final,
                                  evidence="reduces to normal form")
    for ctx in witness_contexts(t, pool):
        ptr = reduce(plug(ctx, t), "vno", fuel, max_size=cap)
        if ptr.outcome is Outcome.NormalForm:
            return SolvabilityVerdict(
                "solvable", context=ctx, nf=ptr.final,
                evidence=f"context {render(ctx)} freezes the term")
    ov = order(t, fuel)
    if ov.kind == "exact" and "normal form" not in ov.evidence:
        return SolvabilityVerdict("unsolvable", order=ov.ordinal,
                                  evidence=ov.evidence)
    return SolvabilityVerdict("unknown", evidence="probes inconclusive")


# ---------------------------------------------------------------------------
# constructive solving (classic calculus)

def _nf_of(m: Term, fuel: int) -> Term:
    tr = reduce(m, "no", fuel)
    if tr.outcome is not Outcome.NormalForm:
        raise NoNormalFormError(
            f"no normal form within fuel ({tr.outcome.value})")
    return tr.final


def _reaches(start: Term, target: Term, fuel: int) -> bool:
    tr = reduce(start, "no", fuel)
    return any(alpha_eq(u, target) for u in tr.terms)


def solve_to_target(m: Term, x: Term, calculus: str = "K",
                    fuel: int = 10000) -> list[Term]:
    """Operands N1..Nk with m N1 ... Nk convertible to x.

    Recipe: take the normal form \\x1...xn. xi Q1...Qq of the closed term m,
    pass I everywhere except position i, which receives K^q x; the K^q
    absorbs the head's own operands and hands back x.
    """
    if calculus != "K":
        raise ValueError("solve_to_target is defined for the classic calculus")
    if free_vars(m):
        raise PreconditionViolation("term must be closed")
    nf = _nf_of(m, fuel)
    binders = []
    body = nf
    while isinstance(body, Lam):
        binders.append(body.binder)
        body = body.body
    head, args = spine(body)
    assert isinstance(head, Var) and head.name in binders
    i = binders.index(head.name)
    operands: list[Term] = [TABLE["I"]] * len(binders)
    operands[i] = App(k_power(len(args)), x)
    assert _reaches(app(m, *operands), x, fuel), "construction failed to verify"
    return operands


def function_context_for_target(m: Term, x: Term, fuel: int = 10000) -> Term:
    """A function context F with F[m] convertible to x; m may be open.

    When the head variable of m's normal form is free, F binds it to K^q x
    and feeds dummy operands; when it is the i-th binder, F passes K^q x in
    position i.
    """
    nf = _nf_of(m, fuel)
    binders = []
    body = nf
    while isinstance(body, Lam):
        binders.append(body.binder)
        body = body.body
    head, args = spine(body)
    assert isinstance(head, Var)
    key = App(k_power(len(args)), x)
    if head.name not in binders:  # free head variable
        ctx = app(Lam(head.name, Hole()), key,
                  *([TABLE["I"]] * len(binders)))
    else:
        i = binders.index(head.name)
        ops: list[Term] = [TABLE["I"]] * len(binders)
        ops[i] = key
        ctx = app(Hole(), *ops)
    assert _reaches(plug(ctx, m), x, fuel), "construction failed to verify"
    return ctx


class PreconditionViolation(ValueError):
    pass


def _context_split(f: Term) -> tuple[list[str], list[Term]]:
    """Split a function context (\\x1..xn.[]) N1..Nk into binders/operands."""
    ops: list[Term] = []
    cur = f
    while isinstance(cur, App):
        ops.append(cur.arg)
        cur = cur.fn
    ops.reverse()
    binders: list[str] = []
    while isinstance(cur, Lam):
        binders.append(cur.binder)
        cur = cur.body
    if not isinstance(cur, Hole):
        raise ValueError("not a function context: (\\x1..xn.[]) N1..Nk")
    return binders, ops


def head_operand_count(n: Term, y: str) -> int:
    """Max number of operands any occurrence of y heads within n."""
    best = 0

    def go(t: Term, bound: frozenset[str]) -> None:
        nonlocal best
        h, args = spine(t)
        if isinstance(h, Var) and h.name == y and y not in bound:
            best = max(best, len(args))
        for a in args:
            go(a, bound)
        if isinstance(h, Lam):
            go(h.body, bound | {h.binder})

    go(n, frozenset())
    return best


def _selector(o: int) -> Term:
    """T = \\v1..vo w. w v1 ... vo — records the operands a variable gets."""
    vs = [f"v{j}" for j in range(1, o + 1)]
    return lam(vs + ["w"], app(Var("w"), *[Var(v) for v in vs]))


def head_context_from_function_context(f: Term, m: Term, n: Term,
                                       fuel: int = 10000) -> Term:
    """Close a function context into a head context.

    Given f with f[m] convertible to the normal form n, bind the free
    variables of n to selector terms T_i (arity = max operand count of the
    variable inside n), the remaining free variables of f[m] to I, and
    re-apply f's own operands under the new binders.
    """
    if not is_nf(n):
        raise PreconditionViolation("target must be a normal form")
    if not _reaches(plug(f, m), n, fuel):
        raise PreconditionViolation("plug(f, m) does not reduce to n")
    binders, ops = _context_split(f)
    ys = free_occurrences(n)
    extras = [v for v in free_occurrences(plug(f, m)) if v not in ys]
    selectors = [_selector(head_operand_count(n, y)) for y in ys]

    def close(t: Term) -> Term:
        for y, s in zip(ys, selectors):
            t = substitute(s, y, t)
        for e in extras:
            t = substitute(TABLE["I"], e, t)
        return t

    prefix = lam(ys + extras + binders, Hole())
    h = app(prefix, *selectors, *([TABLE["I"]] * len(extras)),
            *[close(o) for o in ops])
    expected = _nf_of(close(n), fuel)
    got = reduce(plug(h, m), "no", fuel)
    assert (got.outcome is Outcome.NormalForm
            and alpha_eq(got.final, expected)), "closing context failed"
    return h


# ---------------------------------------------------------------------------
# genericity experiments


@dataclass
class GenericityEntry:
    x: Term
    order: OrderVerdict
    expected_match: Optional[bool]  # None when order is uncertified
    observed: str                   # match | mismatch | diverged
    ok: Optional[bool]


@dataclass
class GenericityReport:
    applicable: bool
    nf: Optional[Term]
    entries: list[GenericityEntry] = field(default_factory=list)

    @property
    def failures(self) -> list[GenericityEntry]:
        return [e for e in self.entries if e.ok is False]


def genericity_experiment(c: Term, m: Term, n0: Ordinal, xs: list[Term],
                          calculus: str = "V",
                          fuel: int = 2000) -> GenericityReport:
    """Check that substituting any x of sufficient order for the irrelevant
    subterm m leaves the result of c[...] unchanged.

    Classic calculus: every x should produce the same normal form.
    Value calculus: only x of order >= n0 are expected to; lower orders are
    recorded as the expected failures.
    """
    strategy = "no" if calculus == "K" else "vno"
    tr = reduce(plug(c, m), strategy, fuel)
    if tr.outcome is not Outcome.NormalForm:
        return GenericityReport(applicable=False, nf=None)
    target = tr.final
    report = GenericityReport(applicable=True, nf=target)
    for x in xs:
        ov = order(x, fuel)
        if calculus == "K":
            expected: Optional[bool] = True
        elif ov.kind == "exact":
            expected = n0 <= ov.ordinal
        else:
            expected = None
        xtr = reduce(plug(c, x), strategy, fuel)
        if xtr.outcome is Outcome.NormalForm:
            observed = "match" if alpha_eq(xtr.final, target) else "mismatch"
        else:
            observed = "diverged"
        ok = None if expected is None else (observed == "match") == expected
        report.entries.append(GenericityEntry(x, ov, expected, observed, ok))
    return report
