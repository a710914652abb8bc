"""The Omega-rewriting layer: collapse certified diverging subterms of
order n to the canonical term OMEGA_n, plus complete developments, combined
betaV/omegaV steps, Z-property instance checks and equality probing for the
resulting theory.

Everything is parameterised by an UnsolvabilityOracle so the undecidable
part stays explicit: the oracle answers unsolvable-of-order / other /
unknown, and Unknown propagates as a first-class outcome.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .classify import redexes
from .solvability import Ordinal, certify_unsolvable
from .strategies import Outcome, contract, reduce
from .terms import (Lam, App, Var, Path, Term, alpha_eq, canon, omega_order,
                    replace_at, subterm_at, subterms, TABLE)


class _UnknownType:
    def __repr__(self) -> str:
        return "Unknown"

    def __bool__(self) -> bool:
        return False


Unknown = _UnknownType()


@dataclass(frozen=True)
class OracleAnswer:
    kind: str  # unsolvable | other | unknown
    order: Optional[Ordinal] = None


class UnsolvabilityOracle:
    """Answers whether a term is certified unsolvable and of which order.

    Backed by the fuel-bounded cycle certifier; explicit annotations
    (term, order) take precedence and let tests pin down hard cases.
    """

    def __init__(self, fuel: int = 300,
                 pool: Optional[list[Term]] = None,
                 annotations: Optional[list[tuple[Term, Ordinal]]] = None,
                 infinite_term: Optional[Term] = None):
        self.fuel = fuel
        self.pool = pool
        self.annotations = list(annotations or [])
        # which concrete term stands for the order-omega collapse target
        self.infinite_term = infinite_term or TABLE["OMEGA_W"]
        self._memo: dict = {}

    def canonical(self, o: Ordinal) -> Term:
        return self.infinite_term if o.is_omega else omega_order(o.n)

    def query(self, t: Term) -> OracleAnswer:
        key = canon(t)
        if key in self._memo:
            return self._memo[key]
        answer = None
        for pattern, o in self.annotations:
            if alpha_eq(t, pattern):
                answer = OracleAnswer("unsolvable", o)
                break
        if answer is None:
            v = certify_unsolvable(t, self.fuel, self.pool)
            if v.kind == "unsolvable":
                answer = OracleAnswer("unsolvable", v.order)
            elif v.kind == "solvable":
                answer = OracleAnswer("other")
            else:
                answer = OracleAnswer("unknown")
        self._memo[key] = answer
        return answer


def omega_redexes(t: Term, oracle: UnsolvabilityOracle,
                  strict: bool = True) -> list[tuple[Path, Ordinal]] | _UnknownType:
    """Outermost certified-unsolvable positions (not already canonical).

    With strict=True an Unknown oracle answer anywhere poisons the result.
    """
    out: list[tuple[Path, Ordinal]] = []
    unknown = False

    def go(t: Term, p: Path) -> None:
        nonlocal unknown
        a = oracle.query(t)
        if a.kind == "unsolvable":
            if not alpha_eq(t, oracle.canonical(a.order)):
                out.append((p, a.order))
            return  # canonical terms are left alone, including their insides
        if a.kind == "unknown":
            unknown = True
            if strict:
                return
        if isinstance(t, App):
            go(t.fn, p + ("L",))
            go(t.arg, p + ("R",))
        elif isinstance(t, Lam):
            go(t.body, p + ("B",))

    go(t, ())
    if strict and unknown:
        return Unknown
    return out


def omega_nf(t: Term, oracle: UnsolvabilityOracle) -> Term | _UnknownType:
    """Replace every maximal certified-unsolvable subterm of order n by the
    canonical order-n term; Unknown when the oracle cannot decide a position
    that could change the result."""
    rs = omega_redexes(t, oracle)
    if rs is Unknown:
        return Unknown
    for p, o in rs:
        t = replace_at(t, p, oracle.canonical(o))
    return t


def complete_development(t: Term) -> Term:
    """Contract simultaneously exactly the value redexes present in t;
    redexes created by the contractions are left alone."""
    if isinstance(t, Lam):
        return Lam(t.binder, complete_development(t.body))
    if isinstance(t, App):
        fn = complete_development(t.fn)
        arg = complete_development(t.arg)
        if isinstance(t.fn, Lam) and (isinstance(t.arg, (Var, Lam))):
            return contract(App(fn, arg))
        return App(fn, arg)
    return t


def complete_omega_development(t: Term,
                               oracle: UnsolvabilityOracle) -> Term | _UnknownType:
    onf = omega_nf(t, oracle)
    if onf is Unknown:
        return Unknown
    return complete_development(onf)


def bvomv_step(t: Term, oracle: UnsolvabilityOracle) -> list[tuple[Term, str, Path]]:
    """Every single combined step: value contractions plus collapses of
    certified-unsolvable subterms.  Unknown positions simply contribute
    nothing (this enumerator is used for bounded searches)."""
    out = [(replace_at(t, p, contract(subterm_at(t, p))), "betaV", p)
           for p in redexes(t, "V")]
    rs = omega_redexes(t, oracle, strict=False)
    for p, o in rs:
        out.append((replace_at(t, p, oracle.canonical(o)), "omegaV", p))
    return out


def _reachable(start: Term, oracle: UnsolvabilityOracle, depth: int,
               max_nodes: int) -> dict:
    """Breadth-first set of combined-step reducts, canon -> representative."""
    seen = {canon(start): start}
    frontier = deque([(start, 0)])
    while frontier and len(seen) < max_nodes:
        cur, d = frontier.popleft()
        if d >= depth:
            continue
        for nxt, _, _ in bvomv_step(cur, oracle):
            key = canon(nxt)
            if key not in seen:
                seen[key] = nxt
                frontier.append((nxt, d + 1))
    return seen


def joinable(a: Term, b: Term, oracle: UnsolvabilityOracle, depth: int = 8,
             max_nodes: int = 4000) -> bool:
    ra = _reachable(a, oracle, depth, max_nodes)
    rb = _reachable(b, oracle, depth, max_nodes)
    return bool(set(ra) & set(rb))


@dataclass(frozen=True)
class ZVerdict:
    holds: Optional[bool]  # True, or None for Unknown (never a silent fail)
    detail: str = ""


def z_property_check(m: Term, n: Term, oracle: UnsolvabilityOracle,
                     fuel: int = 2000, depth: int = 6) -> ZVerdict:
    """For a single combined step m -> n, verify n ->> m^ and m^ ->> n^,
    where ^ is the complete collapse-then-develop image."""
    mo = complete_omega_development(m, oracle)
    no = complete_omega_development(n, oracle)
    if mo is Unknown or no is Unknown:
        return ZVerdict(None, "oracle could not certify a position")
    leg1 = _search_to(n, mo, oracle, depth, fuel)
    leg2 = _search_to(mo, no, oracle, depth, fuel)
    if leg1 and leg2:
        return ZVerdict(True)
    return ZVerdict(None, "bounded search did not connect the legs")


def _search_to(start: Term, goal: Term, oracle: UnsolvabilityOracle,
               depth: int, max_nodes: int) -> bool:
    goal_key = canon(goal)
    return goal_key in _reachable(start, oracle, depth, max_nodes)


@dataclass(frozen=True)
class EqualityVerdict:
    kind: str  # provable | refuted | unknown
    evidence: str = ""
    witness: Optional[Term] = None


def v_theory_equal(a: Term, b: Term, oracle: UnsolvabilityOracle,
                   fuel: int = 2000, depth: int = 6) -> EqualityVerdict:
    """Equality probe: provable on a common combined-step reduct; refuted
    when both sides have distinct plain value normal forms that the collapse
    step leaves untouched (consistency of the theory); unknown otherwise."""
    ra = _reachable(a, oracle, depth, fuel)
    rb = _reachable(b, oracle, depth, fuel)
    common = set(ra) & set(rb)
    if common:
        w = ra[next(iter(common))]
        return EqualityVerdict("provable", "common reduct found", w)
    ta = reduce(a, "vno", fuel)
    tb = reduce(b, "vno", fuel)
    if ta.outcome is Outcome.NormalForm and tb.outcome is Outcome.NormalForm:
        na, nb = ta.final, tb.final
        ca = omega_nf(na, oracle)
        cb = omega_nf(nb, oracle)
        if (ca is not Unknown and cb is not Unknown
                and alpha_eq(ca, na) and alpha_eq(cb, nb)
                and not alpha_eq(na, nb)):
            return EqualityVerdict("refuted",
                                   "distinct normal forms, no collapses")
    return EqualityVerdict("unknown", "bounded probes inconclusive")
