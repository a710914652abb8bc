"""Counting labels: every node carries either the empty label or a count.

The contraction rule for a labelled redex ((\\x.C^l1)^l2 N)^l3 branches on
which of the three labels carries a count c:

    body label c     -> contractum keeps count c
    operator label c -> contractum gets count c+1
    redex label c    -> contractum gets count c
    all empty        -> contractum unlabelled

When several branches apply at once their outcomes must agree; a
disagreement is reported as an invariant breach rather than resolved
silently.  Substitution preserves the label of the substituted term:
[T^l1/x](x^l2) = T^l1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .terms import (Lam, App, Var, Path, Term, alpha_eq, fresh_name,
                    free_vars, hole_path, plug)
from . import strategies
from .strategies import Outcome, V_STRATEGIES
from .solvability import Ordinal, OrderVerdict

Label = Optional[int]  # None is the empty label


class LTerm:
    __slots__ = ()


@dataclass(frozen=True, eq=False)
class LVar(LTerm):
    name: str
    label: Label = None


@dataclass(frozen=True, eq=False)
class LLam(LTerm):
    binder: str
    body: LTerm
    label: Label = None


@dataclass(frozen=True, eq=False)
class LApp(LTerm):
    fn: LTerm
    arg: LTerm
    label: Label = None


class InvariantBreach(AssertionError):
    """Two applicable labelled-contraction branches disagreed."""


def label_all(t: Term) -> LTerm:
    if isinstance(t, Var):
        return LVar(t.name)
    if isinstance(t, Lam):
        return LLam(t.binder, label_all(t.body))
    return LApp(label_all(t.fn), label_all(t.arg))


def erase(t: LTerm) -> Term:
    if isinstance(t, LVar):
        return Var(t.name)
    if isinstance(t, LLam):
        return Lam(t.binder, erase(t.body))
    return App(erase(t.fn), erase(t.arg))


def with_label(t: LTerm, label: Label) -> LTerm:
    if isinstance(t, LVar):
        return LVar(t.name, label)
    if isinstance(t, LLam):
        return LLam(t.binder, t.body, label)
    return LApp(t.fn, t.arg, label)


def lterm_at(t: LTerm, path: Path) -> LTerm:
    for d in path:
        t = {"L": lambda: t.fn, "R": lambda: t.arg, "B": lambda: t.body}[d]()
    return t


def lreplace_at(t: LTerm, path: Path, new: LTerm) -> LTerm:
    if not path:
        return new
    d, rest = path[0], path[1:]
    if d == "L":
        return LApp(lreplace_at(t.fn, rest, new), t.arg, t.label)
    if d == "R":
        return LApp(t.fn, lreplace_at(t.arg, rest, new), t.label)
    return LLam(t.binder, lreplace_at(t.body, rest, new), t.label)


def select(c: Term, m: Term) -> LTerm:
    """Plug m into c with count 0 on m's root and the empty label elsewhere."""
    p = hole_path(c)
    lt = label_all(plug(c, m))
    return lreplace_at(lt, p, with_label(lterm_at(lt, p), 0))


def lcanon(t: LTerm):
    def go(t: LTerm, env: dict[str, int], depth: int):
        if isinstance(t, LVar):
            k = env.get(t.name)
            base = ("b", depth - k) if k is not None else ("f", t.name)
            return base + (t.label,)
        if isinstance(t, LLam):
            old = env.get(t.binder)
            env[t.binder] = depth
            body = go(t.body, env, depth + 1)
            if old is None:
                del env[t.binder]
            else:
                env[t.binder] = old
            return ("l", body, t.label)
        return ("a", go(t.fn, env, depth), go(t.arg, env, depth), t.label)

    return go(t, {}, 0)


def lalpha_eq(a: LTerm, b: LTerm) -> bool:
    return lcanon(a) == lcanon(b)


def lsubstitute(n: LTerm, x: str, m: LTerm) -> LTerm:
    """Capture-avoiding substitution; an occurrence of x takes n's label."""
    if isinstance(m, LVar):
        return n if m.name == x else m
    if isinstance(m, LApp):
        return LApp(lsubstitute(n, x, m.fn), lsubstitute(n, x, m.arg), m.label)
    body_fv = free_vars(erase(m.body))
    if m.binder == x or x not in body_fv:
        return m
    n_fv = free_vars(erase(n))
    if m.binder in n_fv:
        b = fresh_name(m.binder, n_fv | body_fv)
        body = lsubstitute(LVar(b), m.binder, m.body)
        return LLam(b, lsubstitute(n, x, body), m.label)
    return LLam(m.binder, lsubstitute(n, x, m.body), m.label)


def lcontract(redex: LApp) -> LTerm:
    op = redex.fn
    assert isinstance(op, LLam)
    l1, l2, l3 = op.body.label, op.label, redex.label
    outcomes = []
    if l1 is not None:
        outcomes.append(l1)
    if l2 is not None:
        outcomes.append(l2 + 1)
    if l3 is not None:
        outcomes.append(l3)
    if outcomes and any(o != outcomes[0] for o in outcomes):
        raise InvariantBreach(
            f"labelled contraction branches disagree: {outcomes}")
    out = lsubstitute(redex.arg, op.binder, op.body)
    if not outcomes:
        # no branch fired: the contractum keeps whatever label the
        # substitution produced (a bare-variable body hands back the
        # operand together with its count)
        return out
    return with_label(out, outcomes[0])


def labelled_step(t: LTerm, strategy: str) -> tuple[LTerm, Path] | None:
    """Decompose by the erased strategy, contract with the labelled rule."""
    p = strategies.redex_path(erase(t), strategy)
    if p is None:
        return None
    return lreplace_at(t, p, lcontract(lterm_at(t, p))), p


def lrender(t: LTerm) -> str:
    def tag(s: str, label: Label, atomic: bool) -> str:
        if label is None:
            return s
        return f"{s}^{label}" if atomic else f"({s})^{label}"

    def go(t: LTerm, pos: str) -> str:
        if isinstance(t, LVar):
            return tag(t.name, t.label, atomic=True)
        if isinstance(t, LLam):
            s = f"\\{t.binder}.{go(t.body, 'top')}"
            if t.label is not None:
                return tag(s, t.label, atomic=False)
            return f"({s})" if pos in ("fn", "arg") else s
        s = f"{go(t.fn, 'fn')} {go(t.arg, 'arg')}"
        if t.label is not None:
            return tag(s, t.label, atomic=False)
        return f"({s})" if pos == "arg" else s

    return go(t, "top")


# ---------------------------------------------------------------------------
# the counting invariant report

def counts(t: LTerm, path: Path = ()):
    """All (path, count, subterm) with a non-empty label, preorder."""
    if t.label is not None:
        yield path, t.label, t
    if isinstance(t, LApp):
        yield from counts(t.fn, path + ("L",))
        yield from counts(t.arg, path + ("R",))
    elif isinstance(t, LLam):
        yield from counts(t.body, path + ("B",))


@dataclass
class CountCheck:
    step: int
    path: Path
    count: int
    order: OrderVerdict
    ok: bool | None  # None = unverified (oracle could not certify)


@dataclass
class TraceReport:
    initial: LTerm
    marked_order: Ordinal
    steps: list[tuple[LTerm, Path]]
    outcome: Outcome
    max_count: int
    checks: list[CountCheck]

    @property
    def violations(self) -> list[CountCheck]:
        return [c for c in self.checks if c.ok is False]

    @property
    def unverified(self) -> list[CountCheck]:
        return [c for c in self.checks if c.ok is None]


def trace_report(c: Term, m: Term, strategy: str, fuel: int,
                 order_oracle: Callable[[Term], OrderVerdict]) -> TraceReport:
    """Run the labelled strategy from select(c, m) and check at every step
    that each counted subterm's order n satisfies n0 = count + n, where n0
    is the certified order of m (ordinal addition: finite + omega = omega).
    """
    n0v = order_oracle(m)
    if n0v.kind != "exact":
        raise ValueError("order oracle could not certify the marked term")
    n0 = n0v.ordinal

    lt = select(c, m)
    steps: list[tuple[LTerm, Path]] = []
    checks: list[CountCheck] = []
    max_count = 0
    outcome = Outcome.FuelExhausted
    seen = {lcanon(lt): 0}
    oracle_memo: dict = {}

    def check(idx: int, t: LTerm) -> None:
        nonlocal max_count
        for path, count, sub in counts(t):
            max_count = max(max_count, count)
            key = lcanon(sub)
            if key not in oracle_memo:
                oracle_memo[key] = order_oracle(erase(sub))
            v = oracle_memo[key]
            ok = (n0 == Ordinal.finite(count) + v.ordinal
                  ) if v.kind == "exact" else None
            checks.append(CountCheck(idx, path, count, v, ok))

    check(0, lt)
    cur = lt
    for i in range(fuel):
        nxt = labelled_step(cur, strategy)
        if nxt is None:
            outcome = Outcome.NormalForm
            break
        cur, path = nxt
        steps.append((cur, path))
        check(len(steps), cur)
        key = lcanon(cur)
        if key in seen:
            outcome = Outcome.CycleDetected
            break
        seen[key] = len(steps)

    return TraceReport(initial=lt, marked_order=n0, steps=steps,
                       outcome=outcome, max_count=max_count, checks=checks)
