"""Shared helpers: random instance generators and independent brute-force
oracles (kept deliberately naive so they share no logic with the library)."""

from __future__ import annotations

import itertools
from fractions import Fraction

from erlab import core
from erlab.graphs import SimpleGraph


def random_colour_sets(rng, s, allow_empty=True):
    pool = list(range(1, s + 1))
    size_lo = 0 if allow_empty else 1
    size = rng.randint(size_lo, s)
    return frozenset(rng.sample(pool, size))


def random_pattern(rng, r, k, level=0, tries=200):
    """A random pattern feasible at the given level, or None."""
    for _ in range(tries):
        assignment = {}
        for i in range(r):
            for j in range(i + 1, r):
                cs = random_colour_sets(rng, k.s, allow_empty=(level == 0))
                while len(cs) < level:
                    cs = random_colour_sets(rng, k.s)
                assignment[(i, j)] = cs
        pattern = core.ColourPattern(r, assignment)
        ok, _ = core.is_feasible(pattern, k, level)
        if ok:
            return pattern
    return None


def random_rational_simplex(rng, r):
    raw = [rng.randint(1, 20) for _ in range(r)]
    total = sum(raw)
    return tuple(Fraction(x, total) for x in raw)


def random_float_simplex(rng, r):
    raw = [rng.random() + 1e-9 for _ in range(r)]
    total = sum(raw)
    vals = [x / total for x in raw]
    vals[-1] = 1.0 - sum(vals[:-1])
    return tuple(vals)


def brute_force_count(g: SimpleGraph, k: core.ColourSeq) -> int:
    """Independent oracle: iterate every colouring, test every clique."""
    edges = sorted(g.edges)
    count = 0
    for colouring in itertools.product(k.colours(), repeat=len(edges)):
        by_colour = {c: set() for c in k.colours()}
        for e, c in zip(edges, colouring):
            by_colour[c].add(e)
        good = True
        for c in k.colours():
            es = by_colour[c]
            for sub in itertools.combinations(range(g.n), k[c]):
                if all(
                    (min(u, v), max(u, v)) in es
                    for u, v in itertools.combinations(sub, 2)
                ):
                    good = False
                    break
            if not good:
                break
        if good:
            count += 1
    return count


def brute_force_max_clique(g: SimpleGraph) -> int:
    best = 0
    for size in range(g.n, 0, -1):
        for sub in itertools.combinations(range(g.n), size):
            if all(g.has_edge(u, v) for u, v in itertools.combinations(sub, 2)):
                return size
    return best
