"""Decision procedure for standard reduction sequences (value calculus).

A sequence of terms is standard when it can be derived from four clauses:

  1. a single variable;
  2. a call-by-value step prepended to a standard sequence;
  3. lambda congruence: all terms are abstractions, the bodies standard;
  4. application factorisation: all terms applications, the operator part
     moves first (operand constant), then the operand part moves (operator
     constant), both parts standard.

The checker backtracks over factorisation split points with memoisation and
returns the derivation so a caller can replay it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .strategies import is_legal_step, step
from .terms import Lam, App, Var, Term, alpha_eq, canon, fresh_name, free_vars, substitute


class IllegalSequence(ValueError):
    """Some consecutive pair is not a single value-calculus contraction."""


# Derivation nodes (replayable):
#   ("var", name)
#   ("cbv", first_term, sub)           clause 2
#   ("lam", binder, sub)               clause 3
#   ("app", split, sub_fn, sub_arg)    clause 4
Derivation = tuple


def is_standard_sequence(seq: list[Term]) -> tuple[bool, Optional[Derivation] | dict]:
    if not seq:
        raise ValueError("sequence must be nonempty")
    for i in range(len(seq) - 1):
        if not is_legal_step(seq[i], seq[i + 1], "V"):
            raise IllegalSequence(f"terms {i} -> {i + 1} are not a step")
    memo: dict = {}
    d = _derive(tuple(seq), memo)
    if d is not None:
        return True, d
    return False, {"reason": "no derivation under clauses 1-4",
                   "length": len(seq)}


def _derive(seq: tuple[Term, ...], memo: dict) -> Optional[Derivation]:
    key = tuple(canon(t) for t in seq)
    if key in memo:
        return memo[key]
    memo[key] = None  # cut off re-entry while computing
    memo[key] = _derive_uncached(seq, memo)
    return memo[key]


def _derive_uncached(seq: tuple[Term, ...], memo: dict) -> Optional[Derivation]:
    if len(seq) == 1:
        t = seq[0]
        if isinstance(t, Var):
            return ("var", t.name)
        if isinstance(t, Lam):
            sub = _derive((t.body,), memo)
            return ("lam", t.binder, sub) if sub else None
        sub_fn = _derive((t.fn,), memo)
        sub_arg = _derive((t.arg,), memo)
        if sub_fn and sub_arg:
            return ("app", 0, sub_fn, sub_arg)
        return None

    # sub-sequences produced by factorisation must themselves be step chains
    for i in range(len(seq) - 1):
        if not is_legal_step(seq[i], seq[i + 1], "V"):
            return None

    # clause 2: peel a call-by-value step
    s = step(seq[0], "cbv")
    if s is not None and alpha_eq(s[0], seq[1]):
        sub = _derive(seq[1:], memo)
        if sub is not None:
            return ("cbv", seq[0], sub)

    # clause 3: congruence under a common binder
    if all(isinstance(t, Lam) for t in seq):
        avoid = set()
        for t in seq:
            avoid |= free_vars(t)
        z = fresh_name(seq[0].binder, avoid)
        bodies = tuple(substitute(Var(z), t.binder, t.body) for t in seq)
        sub = _derive(bodies, memo)
        if sub is not None:
            return ("lam", z, sub)

    # clause 4: operator phase then operand phase
    if all(isinstance(t, App) for t in seq):
        n = len(seq)
        for split in range(n):
            if not all(alpha_eq(seq[i].arg, seq[0].arg)
                       for i in range(split + 1)):
                continue
            if not all(alpha_eq(seq[i].fn, seq[-1].fn)
                       for i in range(split, n)):
                continue
            sub_fn = _derive(tuple(t.fn for t in seq[:split + 1]), memo)
            if sub_fn is None:
                continue
            sub_arg = _derive(tuple(t.arg for t in seq[split:]), memo)
            if sub_arg is not None:
                return ("app", split, sub_fn, sub_arg)
    return None


def replay(d: Derivation) -> list[Term]:
    """Rebuild the term sequence a derivation proves standard."""
    tag = d[0]
    if tag == "var":
        return [Var(d[1])]
    if tag == "lam":
        return [Lam(d[1], b) for b in replay(d[2])]
    if tag == "cbv":
        return [d[1]] + replay(d[2])
    # app
    _, _, sub_fn, sub_arg = d
    fns = replay(sub_fn)
    args = replay(sub_arg)
    return ([App(f, args[0]) for f in fns]
            + [App(fns[-1], a) for a in args[1:]])
