"""Single-step decomposition and iterated reduction for eight strategies.

Classic calculus (unrestricted beta): cbn, head, no (normal order).
Value calculus (operand must be a value): cbv, chest, ribcage, vno
(value normal order) and gamma_p, a variant of vno that finishes a
block's operand before touching the block's body.

Decomposition context grammars:

    BN[] ::= [] | BN[] T                       (cbn)
    HR[] ::= [] | BN[] T | \\x.HR[]            (head)
    BV[] ::= [] | BV[] T | vwnf BV[]           (cbv)
    CH[] ::= [] | BV[] T | vwnf BV[] | \\x.CH[] (chest)
    RC[] ::= [] | RC[] T | vwnf BV[] | \\x.RC[] (ribcage; the contracted
             redex (\\x.B)N additionally needs B in chnf)

Value normal order chest-reduces the leftmost active component (maximal
subterm not in chnf); it is the complete strategy reaching the beta-value
normal form whenever one exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .classify import is_chnf, is_redex, is_val, is_vwnf
from .terms import (App, Hole, Lam, Path, Term, alpha_eq, canon, replace_at,
                    size, substitute, subterm_at)

K_STRATEGIES = ("cbn", "head", "no")
V_STRATEGIES = ("cbv", "chest", "ribcage", "vno", "gamma_p")
STRATEGIES = K_STRATEGIES + V_STRATEGIES


class Outcome(Enum):
    NormalForm = "NormalForm"
    FuelExhausted = "FuelExhausted"
    CycleDetected = "CycleDetected"


@dataclass(frozen=True)
class Decomposition:
    context: Term  # a term with one hole
    redex: Term    # an application (\x.B) N
    path: Path


@dataclass(frozen=True)
class TraceStep:
    rule: str  # betaK | betaV
    path: Path
    result: Term


@dataclass
class ReductionTrace:
    initial: Term
    strategy: str
    steps: list[TraceStep] = field(default_factory=list)
    outcome: Outcome = Outcome.FuelExhausted
    cycle_index: int | None = None

    @property
    def final(self) -> Term:
        return self.steps[-1].result if self.steps else self.initial

    @property
    def terms(self) -> list[Term]:
        return [self.initial] + [s.result for s in self.steps]


# ---------------------------------------------------------------------------
# decomposition (each helper returns the redex path, or None)

def _d_cbn(t: Term, p: Path) -> Path | None:
    if isinstance(t, App):
        if isinstance(t.fn, Lam):
            return p
        return _d_cbn(t.fn, p + ("L",))
    return None


def _d_head(t: Term, p: Path) -> Path | None:
    while isinstance(t, Lam):
        p = p + ("B",)
        t = t.body
    return _d_cbn(t, p)


def _d_no(t: Term, p: Path) -> Path | None:
    if isinstance(t, Lam):
        return _d_no(t.body, p + ("B",))
    if isinstance(t, App):
        if isinstance(t.fn, Lam):
            return p
        return _d_no(t.fn, p + ("L",)) or _d_no(t.arg, p + ("R",))
    return None


def _d_cbv(t: Term, p: Path, chnf_body: bool = False) -> Path | None:
    """Leftmost weak redex; with chnf_body, its body must also be a chnf."""
    if not isinstance(t, App):
        return None
    if not is_vwnf(t.fn):
        return _d_cbv(t.fn, p + ("L",), chnf_body)
    if not is_vwnf(t.arg):
        return _d_cbv(t.arg, p + ("R",), chnf_body)
    if isinstance(t.fn, Lam) and is_val(t.arg):
        if not chnf_body or is_chnf(t.fn.body):
            return p
    return None


def _d_chest(t: Term, p: Path) -> Path | None:
    while isinstance(t, Lam):
        p = p + ("B",)
        t = t.body
    return _d_cbv(t, p)


def _d_ribcage(t: Term, p: Path) -> Path | None:
    if isinstance(t, Lam):
        return _d_ribcage(t.body, p + ("B",))
    if isinstance(t, App):
        # the redex at the root comes first: its lambda is leftmost
        if (isinstance(t.fn, Lam) and is_val(t.arg)
                and is_chnf(t.fn.body)):
            return p
        r = _d_ribcage(t.fn, p + ("L",))
        if r is not None:
            return r
        if is_vwnf(t.fn):
            return _d_cbv(t.arg, p + ("R",), chnf_body=True)
    return None


def _d_vno(t: Term, p: Path) -> Path | None:
    if not is_chnf(t):
        return _d_chest(t, p)
    if isinstance(t, Lam):
        return _d_vno(t.body, p + ("B",))
    if isinstance(t, App):
        return _d_vno(t.fn, p + ("L",)) or _d_vno(t.arg, p + ("R",))
    return None


def _d_gamma_p(t: Term, p: Path) -> Path | None:
    if not is_chnf(t):
        return _d_chest(t, p)
    if isinstance(t, Lam):
        return _d_gamma_p(t.body, p + ("B",))
    if isinstance(t, App):
        if isinstance(t.fn, Lam):
            # block: finish the operand before opening the body
            return (_d_gamma_p(t.arg, p + ("R",))
                    or _d_gamma_p(t.fn, p + ("L",)))
        return (_d_gamma_p(t.fn, p + ("L",))
                or _d_gamma_p(t.arg, p + ("R",)))
    return None


_DECOMPOSE = {
    "cbn": _d_cbn,
    "head": _d_head,
    "no": _d_no,
    "cbv": _d_cbv,
    "chest": _d_chest,
    "ribcage": _d_ribcage,
    "vno": _d_vno,
    "gamma_p": _d_gamma_p,
}


def redex_path(t: Term, strategy: str) -> Path | None:
    try:
        f = _DECOMPOSE[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}") from None
    return f(t, ())


def decompose(t: Term, strategy: str) -> Decomposition | None:
    """The strategy's unique decomposition, or None when t is irreducible."""
    p = redex_path(t, strategy)
    if p is None:
        return None
    return Decomposition(replace_at(t, p, Hole()), subterm_at(t, p), p)


def contract(redex: Term) -> Term:
    assert isinstance(redex, App) and isinstance(redex.fn, Lam)
    return substitute(redex.arg, redex.fn.binder, redex.fn.body)


def step(t: Term, strategy: str) -> tuple[Term, Path] | None:
    p = redex_path(t, strategy)
    if p is None:
        return None
    redex = subterm_at(t, p)
    if strategy in V_STRATEGIES and not is_val(redex.arg):
        raise AssertionError(
            f"decomposition bug: {strategy} chose a non-value operand")
    return replace_at(t, p, contract(redex)), p


def rule_of(strategy: str) -> str:
    return "betaK" if strategy in K_STRATEGIES else "betaV"


def reduce(t: Term, strategy: str, fuel: int,
           max_size: int | None = None) -> ReductionTrace:
    """Iterate step; stops at a normal form, on fuel exhaustion, or when an
    alpha-equal term reappears (CycleDetected, which certifies divergence
    since every strategy here is deterministic).  max_size cuts runaway
    growth short, reported as fuel exhaustion."""
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    trace = ReductionTrace(initial=t, strategy=strategy)
    rule = rule_of(strategy)
    seen = {canon(t): 0}
    cur = t
    for _ in range(fuel):
        if max_size is not None and size(cur) > max_size:
            break
        nxt = step(cur, strategy)
        if nxt is None:
            trace.outcome = Outcome.NormalForm
            return trace
        cur, path = nxt
        trace.steps.append(TraceStep(rule, path, cur))
        key = canon(cur)
        if key in seen:
            trace.outcome = Outcome.CycleDetected
            trace.cycle_index = seen[key]
            return trace
        seen[key] = len(trace.steps)
    trace.outcome = Outcome.FuelExhausted
    return trace


def is_legal_step(a: Term, b: Term, calculus: str = "V") -> bool:
    """Is a -> b a single beta(V) contraction at some path?"""
    from .classify import redexes
    for p in redexes(a, calculus):
        if alpha_eq(replace_at(a, p, contract(subterm_at(a, p))), b):
            return True
    return False
