"""Shared helpers: seeded random terms and brute-force reduction oracles.

The oracles here deliberately avoid the library's strategy machinery: they
enumerate every contraction position directly, so strategy results can be
checked against an independent source of truth.
"""

import random
from collections import deque

import pytest

from lamv.classify import redexes
from lamv.gen import random_context, random_term, random_value
from lamv.strategies import contract
from lamv.terms import canon, replace_at, subterm_at


def all_reducts(t, calculus="V"):
    """Every one-step reduct of t, one per contractible position."""
    return [replace_at(t, p, contract(subterm_at(t, p)))
            for p in redexes(t, calculus)]


def bfs_reachable(t, depth, calculus="V", max_nodes=20000):
    """canon -> term for everything reachable within the given depth."""
    seen = {canon(t): t}
    frontier = deque([(t, 0)])
    while frontier and len(seen) < max_nodes:
        cur, d = frontier.popleft()
        if d >= depth:
            continue
        for nxt in all_reducts(cur, calculus):
            key = canon(nxt)
            if key not in seen:
                seen[key] = nxt
                frontier.append((nxt, d + 1))
    return seen


def bfs_normal_forms(t, depth, calculus="V", max_nodes=20000):
    """Normal forms reachable within depth, canon -> term."""
    return {k: u for k, u in bfs_reachable(t, depth, calculus,
                                           max_nodes).items()
            if not redexes(u, calculus)}


def bfs_joinable(a, b, depth, calculus="V", max_nodes=20000):
    ra = bfs_reachable(a, depth, calculus, max_nodes)
    rb = bfs_reachable(b, depth, calculus, max_nodes)
    return bool(set(ra) & set(rb))


def terms_stream(seed, size):
    """Deterministic infinite stream of random terms."""
    rng = random.Random(seed)
    while True:
        yield random_term(rng, size)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


__all__ = ["all_reducts", "bfs_reachable", "bfs_normal_forms",
           "bfs_joinable", "terms_stream", "random_term", "random_value",
           "random_context"]
