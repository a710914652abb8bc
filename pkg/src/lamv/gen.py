"""Random term generation for the property suites and experiments."""

from __future__ import annotations

import random

from .terms import Lam, App, Var, Term

FREE_NAMES = ("x", "y", "z")
BINDER_NAMES = ("a", "b", "c", "d", "e")


def random_term(rng: random.Random, size: int,
                scope: tuple[str, ...] = FREE_NAMES) -> Term:
    """A random term with at most `size` internal nodes."""
    if size <= 1:
        return Var(rng.choice(scope))
    roll = rng.random()
    if roll < 0.45:
        binder = rng.choice(BINDER_NAMES)
        return Lam(binder, random_term(rng, size - 1, scope + (binder,)))
    left = rng.randint(1, size - 1)
    return App(random_term(rng, left, scope),
               random_term(rng, size - left, scope))


def random_value(rng: random.Random, size: int = 4) -> Term:
    if size <= 1 or rng.random() < 0.25:
        return Var(rng.choice(FREE_NAMES))
    binder = rng.choice(BINDER_NAMES)
    return Lam(binder, random_term(rng, size - 1, FREE_NAMES + (binder,)))


def random_context(rng: random.Random, size: int) -> Term:
    """A random one-hole context, built by carving a hole into a term."""
    from .terms import Hole, replace_at, subterms

    t = random_term(rng, size)
    paths = [p for p, _ in subterms(t)]
    return replace_at(t, rng.choice(paths), Hole())
