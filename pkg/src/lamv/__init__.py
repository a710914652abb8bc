"""lamv: a workbench for the value variant of the lambda calculus.

Terms, term-class grammars, reduction strategies (classic and value),
a counting labelling with its order invariant, solvability certification,
omega-collapse and equality probes for the value theory, and a checker
for standard reduction sequences.
"""

from .classify import TermClass, UnderlineKind, classify, underline
from .solvability import Ordinal, OrderVerdict, certify_unsolvable, order
from .strategies import Outcome, ReductionTrace, STRATEGIES, reduce, step
from .terms import (App, Hole, Lam, Term, Var, alpha_eq, parse,
                    parse_context, plug, render, substitute, TABLE)
from .theory import UnsolvabilityOracle, Unknown, omega_nf, v_theory_equal

__all__ = [
    "App", "Hole", "Lam", "Term", "Var",
    "Ordinal", "OrderVerdict", "Outcome", "ReductionTrace",
    "STRATEGIES", "TABLE", "TermClass", "UnderlineKind",
    "Unknown", "UnsolvabilityOracle",
    "alpha_eq", "certify_unsolvable", "classify", "omega_nf", "order",
    "parse", "parse_context", "plug", "reduce", "render", "step",
    "substitute", "underline", "v_theory_equal",
]

__version__ = "0.1.0"
