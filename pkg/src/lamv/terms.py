"""Core term representation: named lambda terms, parsing, printing,
alpha-equivalence, capture-avoiding substitution and (capturing) contexts.

Identifiers are nonempty strings matching [a-z][a-z0-9_']*.  Applications
associate to the left; lambda bodies extend as far right as possible.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from typing import Iterator

# Term walkers are recursive and reduction can grow terms well past the
# default interpreter limit before any fuel bound trips.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 30000))


class Term:
    """Base class for Var / Lam / App (and Hole, for contexts)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {render(self)}>"


@dataclass(frozen=True, eq=False, repr=False)
class Var(Term):
    name: str


@dataclass(frozen=True, eq=False, repr=False)
class Lam(Term):
    binder: str
    body: Term


@dataclass(frozen=True, eq=False, repr=False)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True, eq=False, repr=False)
class Hole(Term):
    """The hole of a context.  Exactly one per context."""


# A path addresses a subterm: L/R descend into an application's operator
# and operand, B into an abstraction body.  () is the root.
Path = tuple[str, ...]

IDENT_RE = re.compile(r"[a-z][a-z0-9_']*")


# ---------------------------------------------------------------------------
# construction helpers

def lam(binders: str | list[str], body: Term) -> Term:
    """Nested abstraction over one or more binders ('x y z' or list)."""
    names = binders.split() if isinstance(binders, str) else list(binders)
    for name in reversed(names):
        body = Lam(name, body)
    return body


def app(*terms: Term) -> Term:
    """Left-associated application chain."""
    out = terms[0]
    for t in terms[1:]:
        out = App(out, t)
    return out


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Unfold an application chain: spine(((h a) b)) = (h, [a, b])."""
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


# ---------------------------------------------------------------------------
# traversal

def subterm_at(t: Term, path: Path) -> Term:
    for d in path:
        if d == "L" and isinstance(t, App):
            t = t.fn
        elif d == "R" and isinstance(t, App):
            t = t.arg
        elif d == "B" and isinstance(t, Lam):
            t = t.body
        else:
            raise ValueError(f"path {path!r} does not resolve in term")
    return t


def replace_at(t: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    d, rest = path[0], path[1:]
    if d == "L" and isinstance(t, App):
        return App(replace_at(t.fn, rest, new), t.arg)
    if d == "R" and isinstance(t, App):
        return App(t.fn, replace_at(t.arg, rest, new))
    if d == "B" and isinstance(t, Lam):
        return Lam(t.binder, replace_at(t.body, rest, new))
    raise ValueError(f"path {path!r} does not resolve in term")


def subterms(t: Term, path: Path = ()) -> Iterator[tuple[Path, Term]]:
    """All (path, subterm) pairs in preorder, node before children, L before R."""
    yield path, t
    if isinstance(t, App):
        yield from subterms(t.fn, path + ("L",))
        yield from subterms(t.arg, path + ("R",))
    elif isinstance(t, Lam):
        yield from subterms(t.body, path + ("B",))


# ---------------------------------------------------------------------------
# free variables, alpha-equivalence

def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.binder}
    if isinstance(t, App):
        return free_vars(t.fn) | free_vars(t.arg)
    return frozenset()  # Hole


def free_occurrences(t: Term) -> list[str]:
    """Free variables in first-occurrence (left-to-right) order."""
    seen: list[str] = []

    def go(t: Term, bound: frozenset[str]) -> None:
        if isinstance(t, Var):
            if t.name not in bound and t.name not in seen:
                seen.append(t.name)
        elif isinstance(t, Lam):
            go(t.body, bound | {t.binder})
        elif isinstance(t, App):
            go(t.fn, bound)
            go(t.arg, bound)

    go(t, frozenset())
    return seen


def canon(t: Term):
    """Canonical nameless form: hashable, equal iff terms are alpha-equal."""

    def go(t: Term, env: dict[str, int], depth: int):
        if isinstance(t, Var):
            k = env.get(t.name)
            # bound variables by binder depth, free ones by name
            return ("b", depth - k) if k is not None else ("f", t.name)
        if isinstance(t, Lam):
            old = env.get(t.binder)
            env[t.binder] = depth
            body = go(t.body, env, depth + 1)
            if old is None:
                del env[t.binder]
            else:
                env[t.binder] = old
            return ("l", body)
        if isinstance(t, App):
            return ("a", go(t.fn, env, depth), go(t.arg, env, depth))
        return ("h",)

    return go(t, {}, 0)


def alpha_eq(a: Term, b: Term) -> bool:
    return canon(a) == canon(b)


def size(t: Term) -> int:
    if isinstance(t, App):
        return 1 + size(t.fn) + size(t.arg)
    if isinstance(t, Lam):
        return 1 + size(t.body)
    return 1


# ---------------------------------------------------------------------------
# substitution

def fresh_name(base: str, avoid: frozenset[str] | set[str]) -> str:
    """Deterministic fresh name: smallest primed variant of base not in avoid."""
    name = base
    while name in avoid:
        name += "'"
    return name


def substitute(n: Term, x: str, m: Term) -> Term:
    """Capture-avoiding substitution m[n/x]."""
    if isinstance(m, Var):
        return n if m.name == x else m
    if isinstance(m, App):
        return App(substitute(n, x, m.fn), substitute(n, x, m.arg))
    if isinstance(m, Lam):
        if m.binder == x or x not in free_vars(m.body):
            return m
        if m.binder in free_vars(n):
            b = fresh_name(m.binder, free_vars(n) | free_vars(m.body))
            body = substitute(Var(b), m.binder, m.body)
            return Lam(b, substitute(n, x, body))
        return Lam(m.binder, substitute(n, x, m.body))
    return m  # Hole


# ---------------------------------------------------------------------------
# contexts

def hole_paths(c: Term) -> list[Path]:
    return [p for p, s in subterms(c) if isinstance(s, Hole)]


def hole_path(c: Term) -> Path:
    ps = hole_paths(c)
    if len(ps) != 1:
        raise ValueError(f"context must have exactly one hole, found {len(ps)}")
    return ps[0]


def plug(c: Term, t: Term) -> Term:
    """Plug t into the hole of c, literally: binders of c may capture."""
    return replace_at(c, hole_path(c), t)


# ---------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<lam>[\\λ])|(?P<dot>\.)|(?P<lp>\()|(?P<rp>\))"
    r"|(?P<hole>\[\])|(?P<comb>#[A-Za-z0-9_^]+)|(?P<ident>[a-z][a-z0-9_']*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                             pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, allow_hole: bool):
        self.tokens = tokens
        self.i = 0
        self.allow_hole = allow_hole

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def term(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", 0)
        if tok[0] == "lam":
            self.i += 1
            binders = []
            while self.peek() and self.peek()[0] == "ident":
                binders.append(self.peek()[1])
                self.i += 1
            if not binders:
                raise ParseError("lambda needs at least one binder", tok[2])
            nxt = self.peek()
            if nxt is None or nxt[0] != "dot":
                raise ParseError("expected '.' after binders", tok[2])
            self.i += 1
            return lam(binders, self.term())
        return self.application()

    def application(self) -> Term:
        t = self.atom()
        while True:
            nxt = self.peek()
            if nxt is None or nxt[0] in ("rp", "dot"):
                return t
            if nxt[0] == "lam":
                # an abstraction in operand tail position: consume it whole
                t = App(t, self.term())
                return t
            t = App(t, self.atom())

    def atom(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", 0)
        kind, text, pos = tok
        if kind == "ident":
            self.i += 1
            return Var(text)
        if kind == "comb":
            self.i += 1
            return combinator(text[1:])
        if kind == "hole":
            if not self.allow_hole:
                raise ParseError("hole '[]' only allowed in contexts", pos)
            self.i += 1
            return Hole()
        if kind == "lp":
            self.i += 1
            t = self.term()
            nxt = self.peek()
            if nxt is None or nxt[0] != "rp":
                raise ParseError("expected ')'", pos)
            self.i += 1
            return t
        raise ParseError(f"unexpected token {text!r}", pos)


def _parse(text: str, allow_hole: bool) -> Term:
    p = _Parser(_tokenize(text), allow_hole)
    t = p.term()
    if p.peek() is not None:
        raise ParseError(f"trailing input {p.peek()[1]!r}", p.peek()[2])
    return t


def parse(text: str) -> Term:
    return _parse(text, allow_hole=False)


def parse_context(text: str) -> Term:
    c = _parse(text, allow_hole=True)
    hole_path(c)  # validates exactly one hole
    return c


# ---------------------------------------------------------------------------
# rendering

def render(t: Term, fold: bool = False) -> str:
    """Minimal-parenthesis printing; parse(render(t)) is alpha-equal to t.

    With fold=True, subterms alpha-equal to a glossary combinator are
    printed as #NAME.
    """

    def folded(t: Term) -> str | None:
        if not fold:
            return None
        for name in _FOLD_ORDER:
            if alpha_eq(t, TABLE[name]):
                return "#" + name
        return None

    def go(t: Term, pos: str) -> str:
        f = folded(t)
        if f is not None:
            return f
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Hole):
            return "[]"
        if isinstance(t, Lam):
            s = f"\\{t.binder}.{go(t.body, 'top')}"
            return f"({s})" if pos in ("fn", "arg") else s
        s = f"{go(t.fn, 'fn')} {go(t.arg, 'arg')}"
        return f"({s})" if pos == "arg" else s

    return go(t, "top")


# ---------------------------------------------------------------------------
# glossary of particular terms

def _mk_table() -> dict[str, Term]:
    i = lam("x", Var("x"))
    k = lam("x y", Var("x"))
    delta = lam("x", app(Var("x"), Var("x")))
    omega = app(delta, delta)
    b = app(lam("y", delta), app(Var("x"), i), delta)
    u = Lam("x", b)
    t1 = App(b, app(Var("x"), Lam("x", omega)))
    t2 = App(b, Lam("x", omega))
    y = lam("f", App(lam("x", App(Var("f"), app(Var("x"), Var("x")))),
                     lam("x", App(Var("f"), app(Var("x"), Var("x"))))))
    w = lam("x y", app(Var("x"), Var("x")))
    return {
        "I": i,
        "K": k,
        "DELTA": delta,
        "OMEGA": omega,
        "U": u,
        "B": b,
        "T1": t1,
        "T2": t2,
        "Y": y,
        # canonical order-omega term: steps to \y.#OMEGA_W, exposing
        # arbitrarily many binders under value reduction
        "OMEGA_W": App(w, w),
    }


TABLE: dict[str, Term] = _mk_table()
_FOLD_ORDER = ["OMEGA_W", "OMEGA", "T1", "T2", "U", "B", "Y", "DELTA", "K", "I"]


def k_power(m: int) -> Term:
    """K^m: takes m+1 operands and returns the first.  K^0 is I."""
    body: Term = Var("x")
    for _ in range(m):
        body = App(TABLE["K"], body)
    return Lam("x", body)


def omega_order(n) -> Term:
    """The canonical order-n diverging term: \\x1...xn.OMEGA (or OMEGA_W)."""
    if n is None:  # omega
        return TABLE["OMEGA_W"]
    return lam([f"x{i}" for i in range(1, n + 1)], TABLE["OMEGA"]) \
        if n else TABLE["OMEGA"]


def combinator(name: str) -> Term:
    if name in TABLE:
        return TABLE[name]
    m = re.fullmatch(r"K\^?(\d+)", name)
    if m:
        return k_power(int(m.group(1)))
    m = re.fullmatch(r"OMEGA_?(\d+)", name)
    if m:
        return omega_order(int(m.group(1)))
    raise ParseError(f"unknown combinator #{name}", 0)
