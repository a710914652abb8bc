"""Term-class predicates, redex location, underlining and active components.

Grammar of the classes (Val etc. for the value calculus, NF/HNF for the
classic one):

    Val     ::= x | \\x.T
    Neu     ::= x T T*
    NF      ::= \\x.NF | x NF*
    HNF     ::= \\x.HNF | x T*
    NeuV    ::= Neu | Block T*
    Block   ::= (\\x.T) NeuV
    VNF     ::= x | \\x.VNF | Stuck
    Stuck   ::= x VNF VNF* | BlockNF VNF*
    BlockNF ::= (\\x.VNF) Stuck
    CHNF    ::= x | \\x.CHNF | NeuW
    VWNF    ::= Val | NeuW
    NeuW    ::= x VWNF VWNF* | (\\x.T) NeuW VWNF*
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .terms import App, Lam, Path, Term, Var, spine, subterms


class TermClass(Enum):
    Val = "Val"
    Neu = "Neu"
    NF = "NF"
    HNF = "HNF"
    NeuV = "NeuV"
    Block = "Block"
    VNF = "VNF"
    Stuck = "Stuck"
    BlockNF = "BlockNF"
    CHNF = "CHNF"
    VWNF = "VWNF"
    NeuW = "NeuW"


class UnderlineKind(Enum):
    bv = "bv"
    ch = "ch"
    rc = "rc"
    bn = "bn"
    he = "he"
    hs = "hs"


def is_val(t: Term) -> bool:
    return isinstance(t, (Var, Lam))


def is_neu(t: Term) -> bool:
    h, args = spine(t)
    return isinstance(h, Var) and bool(args)


def is_nf(t: Term) -> bool:
    if isinstance(t, Lam):
        return is_nf(t.body)
    h, args = spine(t)
    return isinstance(h, Var) and all(is_nf(a) for a in args)


def is_hnf(t: Term) -> bool:
    while isinstance(t, Lam):
        t = t.body
    h, _ = spine(t)
    return isinstance(h, Var)


def is_block(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.fn, Lam) and is_neuv(t.arg)


def is_neuv(t: Term) -> bool:
    if is_neu(t):
        return True
    h, args = spine(t)
    return bool(args) and isinstance(h, Lam) and is_block(App(h, args[0]))


def is_vnf(t: Term) -> bool:
    if isinstance(t, Var):
        return True
    if isinstance(t, Lam):
        return is_vnf(t.body)
    return is_stuck(t)


def is_stuck(t: Term) -> bool:
    h, args = spine(t)
    if isinstance(h, Var):
        return bool(args) and all(is_vnf(a) for a in args)
    if isinstance(h, Lam) and args:
        return is_blocknf(App(h, args[0])) and all(is_vnf(a) for a in args[1:])
    return False


def is_blocknf(t: Term) -> bool:
    return (isinstance(t, App) and isinstance(t.fn, Lam)
            and is_vnf(t.fn.body) and is_stuck(t.arg))


def is_chnf(t: Term) -> bool:
    if isinstance(t, Var):
        return True
    if isinstance(t, Lam):
        return is_chnf(t.body)
    return is_neuw(t)


def is_vwnf(t: Term) -> bool:
    return is_val(t) or is_neuw(t)


def is_neuw(t: Term) -> bool:
    h, args = spine(t)
    if not args:
        return False
    if isinstance(h, Var):
        return all(is_vwnf(a) for a in args)
    if isinstance(h, Lam):
        return is_neuw(args[0]) and all(is_vwnf(a) for a in args[1:])
    return False


_PREDICATES = {
    TermClass.Val: is_val,
    TermClass.Neu: is_neu,
    TermClass.NF: is_nf,
    TermClass.HNF: is_hnf,
    TermClass.NeuV: is_neuv,
    TermClass.Block: is_block,
    TermClass.VNF: is_vnf,
    TermClass.Stuck: is_stuck,
    TermClass.BlockNF: is_blocknf,
    TermClass.CHNF: is_chnf,
    TermClass.VWNF: is_vwnf,
    TermClass.NeuW: is_neuw,
}


def classify(t: Term) -> set[TermClass]:
    return {cls for cls, pred in _PREDICATES.items() if pred(t)}


# ---------------------------------------------------------------------------
# redexes

def is_redex(t: Term, calculus: str = "V") -> bool:
    if not (isinstance(t, App) and isinstance(t.fn, Lam)):
        return False
    return calculus == "K" or is_val(t.arg)


def redexes(t: Term, calculus: str = "V") -> list[Path]:
    """Paths of all beta (K) / beta-value (V) redexes, preorder L-before-R."""
    return [p for p, s in subterms(t) if is_redex(s, calculus)]


# ---------------------------------------------------------------------------
# underlining
#
# Six mutually recursive markings.  Each function underlines certain
# variables and lambdas; a redex belongs to the corresponding family when
# its outermost lambda is underlined.
#
#   bv x = _x    bv \x.B = _\x.B       bv (M N) = bv M, bv N
#   ch x = _x    ch \x.B = _\x.(ch B)  ch (M N) = bv M, bv N
#   rc x = _x    rc \x.B = _\x.(rc B)  rc (M N) = rc M, bv N
#   bn x = _x    bn \x.B = _\x.B       bn (M N) = bn M
#   he x = _x    he \x.B = _\x.(he B)  he (M N) = bn M
#   hs x = _x    hs \x.B = _\x.(hs B)  hs (M N) = hs M

def underline(t: Term, kind: UnderlineKind) -> set[Path]:
    out: set[Path] = set()

    def mark(t: Term, p: Path, k: str) -> None:
        if isinstance(t, Var):
            out.add(p)
        elif isinstance(t, Lam):
            out.add(p)
            if k in ("ch", "rc", "he", "hs"):
                mark(t.body, p + ("B",), k)
        elif isinstance(t, App):
            if k == "bv":
                mark(t.fn, p + ("L",), "bv")
                mark(t.arg, p + ("R",), "bv")
            elif k == "ch":
                mark(t.fn, p + ("L",), "bv")
                mark(t.arg, p + ("R",), "bv")
            elif k == "rc":
                mark(t.fn, p + ("L",), "rc")
                mark(t.arg, p + ("R",), "bv")
            elif k in ("bn", "he"):
                mark(t.fn, p + ("L",), "bn")
            else:  # hs
                mark(t.fn, p + ("L",), "hs")

    mark(t, (), kind.value)
    return out


def _underlined_redexes(t: Term, kind: UnderlineKind, calculus: str) -> list[Path]:
    marked = underline(t, kind)
    return [p for p in redexes(t, calculus) if p + ("L",) in marked]


def chest_redexes(t: Term) -> list[Path]:
    return _underlined_redexes(t, UnderlineKind.ch, "V")


def ribcage_redexes(t: Term) -> list[Path]:
    return _underlined_redexes(t, UnderlineKind.rc, "V")


def head_redexes(t: Term) -> list[Path]:
    return _underlined_redexes(t, UnderlineKind.he, "K")


def head_spine_redexes(t: Term) -> list[Path]:
    return _underlined_redexes(t, UnderlineKind.hs, "K")


# ---------------------------------------------------------------------------
# active components

def active_components(t: Term, calculus: str = "V") -> list[tuple[Path, Term]]:
    """Maximal subterms not in chnf (V) / hnf (K), in left-to-right order."""
    ok = is_chnf if calculus == "V" else is_hnf
    out: list[tuple[Path, Term]] = []

    def go(t: Term, p: Path) -> None:
        if not ok(t):
            out.append((p, t))
            return
        if isinstance(t, Lam):
            go(t.body, p + ("B",))
        elif isinstance(t, App):
            go(t.fn, p + ("L",))
            go(t.arg, p + ("R",))

    go(t, ())
    return out


# ---------------------------------------------------------------------------
# chnf shape decomposition


@dataclass(frozen=True)
class ChnfShape:
    """A chnf stripped to its accumulator shape:

    \\x1...xn. (\\yp.Bp)( ... (\\y1.B1)(z W1*) ... ) Wp*

    binders: the outer lambda prefix.
    layers:  innermost-first (binder, body, trailing operands) block layers.
    head:    the head variable z, or None when the body is just a variable
             with no accumulator.
    head_args: operands of the head variable.
    """

    binders: tuple[str, ...]
    layers: tuple[tuple[str, Term, tuple[Term, ...]], ...]
    head: str
    head_args: tuple[Term, ...]


def chnf_shape(t: Term) -> ChnfShape | None:
    """Decompose a chnf into its displayed shape; None on non-chnf input."""
    binders: list[str] = []
    while isinstance(t, Lam):
        binders.append(t.binder)
        t = t.body
    layers: list[tuple[str, Term, tuple[Term, ...]]] = []

    def walk(u: Term):
        h, args = spine(u)
        if isinstance(h, Var):
            if args and not all(is_vwnf(a) for a in args):
                return None
            return (h.name, tuple(args))
        if isinstance(h, Lam) and args:
            if not all(is_vwnf(a) for a in args[1:]):
                return None
            layers.append((h.binder, h.body, tuple(args[1:])))
            return walk(args[0])
        return None

    base = walk(t)
    if base is None:
        return None
    layers.reverse()  # innermost first
    return ChnfShape(tuple(binders), tuple(layers), base[0], base[1])
