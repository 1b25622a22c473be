"""Enumeration of feasible colour patterns up to isomorphism and the small-r
search for the optimum.

Isomorphism allows vertex relabelling plus colour relabelling within blocks
of equal forbidden clique order.  Generation is level-wise: representatives
on v vertices are extended by every feasible attachment row, and the results
deduplicated by canonical code.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import core, weights
from .graphs import has_clique


@dataclass(frozen=True)
class CanonicalPattern:
    pattern: core.ColourPattern
    canonical_code: bytes


@dataclass
class SearchResult:
    k: core.ColourSeq
    r_range: list
    best_value: core.QBreakdown | None
    best_numeric: float
    optima: list  # FeasibleTriple, basic (level 2, all weights positive)
    exhaustive: dict  # r -> bool
    nodes: int


def _pair_order(r: int) -> list:
    return [(i, j) for i in range(r) for j in range(i + 1, r)]


def _colour_perms(k: core.ColourSeq) -> list:
    """Colour permutations preserving the clique-order sequence."""
    blocks: dict[int, list[int]] = {}
    for c in k.colours():
        blocks.setdefault(k[c], []).append(c)
    perms = [{}]
    for members in blocks.values():
        new = []
        for base in perms:
            for p in itertools.permutations(members):
                ext = dict(base)
                ext.update(zip(members, p))
                new.append(ext)
        perms = new
    return perms


def _encode(pattern: core.ColourPattern, vperm, cmap) -> bytes:
    r = pattern.r
    masks = bytearray(r * (r - 1) // 2)
    idx = {}
    n = 0
    for i in range(r):
        for j in range(i + 1, r):
            idx[(i, j)] = n
            n += 1
    for (i, j), cs in pattern.assignment.items():
        a, b = vperm[i], vperm[j]
        m = 0
        for c in cs:
            m |= 1 << (cmap[c] - 1)
        masks[idx[(min(a, b), max(a, b))]] = m
    return bytes(masks)


def canonical_code(pattern: core.ColourPattern, k: core.ColourSeq) -> bytes:
    cperms = _colour_perms(k)
    best = None
    for vperm in itertools.permutations(range(pattern.r)):
        for cmap in cperms:
            code = _encode(pattern, vperm, cmap)
            if best is None or code < best:
                best = code
    return best


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> bool:
        self.used += 1
        return self.used <= self.limit


def _extension_rows(base: core.ColourPattern, k: core.ColourSeq, subsets, budget):
    """All feasible rows attaching a new vertex to `base` at level 2."""
    v = base.r
    adj = {c: base.colour_graph(c).adjacency_masks() for c in k.colours()}
    row: list[frozenset] = []
    out = []

    def feasible_entry(j: int, cs: frozenset) -> bool:
        for c in cs:
            nbr = 0
            for x in range(j):
                if c in row[x]:
                    nbr |= 1 << x
            nbr |= 1 << j
            # new vertex + colour-c neighbourhood must not span K_{k_c}
            masked = [adj[c][x] & nbr if (nbr >> x) & 1 else 0 for x in range(v)]
            if has_clique(masked, k[c] - 1) is not None:
                return False
        return True

    def dfs(j: int):
        if j == v:
            out.append(tuple(row))
            return
        for cs in subsets:
            if budget is not None and not budget.spend():
                return
            row.append(cs)
            if feasible_entry(j, cs):
                dfs(j + 1)
            row.pop()

    dfs(0)
    return out


def enumerate_patterns(r: int, k: core.ColourSeq, budget: _Budget | None = None):
    """One representative per isomorphism class of the level-2 patterns.

    Returns (list of CanonicalPattern, completed flag).
    """
    if r < 2:
        raise core.ErlabError("enumeration needs r >= 2")
    s = k.s
    subsets = [
        frozenset(cs)
        for size in range(2, s + 1)
        for cs in itertools.combinations(range(1, s + 1), size)
    ]
    level: dict[bytes, core.ColourPattern] = {}
    for cs in subsets:
        p = core.ColourPattern(2, {(0, 1): cs})
        ok, _ = core.is_feasible(p, k, 2)
        if ok:
            level.setdefault(canonical_code(p, k), p)
    completed = True
    for v in range(2, r):
        nxt: dict[bytes, core.ColourPattern] = {}
        for base in level.values():
            rows = _extension_rows(base, k, subsets, budget)
            if budget is not None and budget.used > budget.limit:
                completed = False
            for row in rows:
                assignment = dict(base.assignment)
                for x, cs in enumerate(row):
                    assignment[(x, v)] = cs
                p = core.ColourPattern(v + 1, assignment)
                nxt.setdefault(canonical_code(p, k), p)
        level = nxt
        if not completed:
            break
    reps = [CanonicalPattern(p, code) for code, p in sorted(level.items())]
    return reps, completed


def solve_Q2(
    k: core.ColourSeq,
    r_max: int,
    budget: int = 10**8,
    *,
    prune: bool = True,
) -> SearchResult:
    if r_max >= core.ramsey_upper_bound(k):
        raise core.ErlabError(
            f"r_max={r_max} not below the Ramsey bound {core.ramsey_upper_bound(k)}"
        )
    tracker = _Budget(budget)
    best_triple = None
    best_numeric = -1.0
    optima: dict[bytes, core.FeasibleTriple] = {}
    exhaustive = {}
    for r in range(2, r_max + 1):
        reps, completed = enumerate_patterns(r, k, tracker)
        exhaustive[r] = completed
        for rep in reps:
            if prune and best_numeric > 0:
                mmax = max(len(cs) for cs in rep.pattern.assignment.values())
                bound = (1 - 1 / r) * math.log2(max(mmax, 1))
                if bound < best_numeric - 1e-9:
                    continue
            opt = weights.optimize_weights(rep.pattern, k, cross_check=False)
            val = opt.value.numeric_value
            if len(opt.support) < r:
                continue  # basic optimum lives on fewer vertices; found there
            if val > best_numeric + 1e-9:
                best_numeric = val
                best_triple = core.FeasibleTriple(rep.pattern, opt.weighting, level=2)
                optima = {rep.canonical_code: best_triple}
            elif abs(val - best_numeric) <= 1e-9:
                optima.setdefault(
                    rep.canonical_code,
                    core.FeasibleTriple(rep.pattern, opt.weighting, level=2),
                )
        if not exhaustive[r]:
            for later in range(r + 1, r_max + 1):
                exhaustive[later] = False
            break
    best_value = core.q_value(best_triple) if best_triple is not None else None
    ordered = [optima[c] for c in sorted(optima)]
    return SearchResult(
        k=k,
        r_range=list(range(2, r_max + 1)),
        best_value=best_value,
        best_numeric=best_numeric,
        optima=ordered,
        exhaustive=exhaustive,
        nodes=tracker.used,
    )


def verify_candidate(
    triple: core.FeasibleTriple, k: core.ColourSeq, claimed_value: core.QBreakdown
) -> dict:
    """Membership checks for a claimed basic optimal solution."""
    feasible, witness = core.is_feasible(triple.pattern, k, level=2)
    positive = all(float(a) > 0 for a in triple.weighting)
    actual = core.q_value(triple)
    if actual.exact and claimed_value.exact:
        value_ok = actual == claimed_value
    else:
        value_ok = abs(actual.numeric_value - claimed_value.numeric_value) <= 1e-9
    stationary, residuals = weights.verify_stationarity(triple, 1e-8)
    checks = {
        "feasible_level2": feasible,
        "all_weights_positive": positive,
        "value_matches_claim": value_ok,
        "stationary": stationary,
    }
    return {
        "checks": checks,
        "passed": all(checks.values()),
        "witness": witness,
        "value": actual,
        "residuals": residuals,
    }
