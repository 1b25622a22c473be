"""Brute-force ground truth: counting clique-free edge colourings directly.

These routines are deliberately simple and exponential; they exist to check
the structural machinery on small instances, not to be fast.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import core
from .graphs import SimpleGraph, has_clique


class TooLarge(core.ErlabError):
    pass


def count_valid_colourings(g: SimpleGraph, k: core.ColourSeq) -> int:
    """F(G; k): edge colourings of g with no K_{k_c} in colour c.

    Exact arbitrary-precision count by DFS with an incremental clique check
    on the freshly coloured edge.
    """
    s = k.s
    e = len(g.edges)
    if (s == 2 and e > 24) or (s > 2 and s**e > 10**8):
        raise TooLarge(f"{s}^{e} colourings is beyond the brute-force guard")
    edges = sorted(g.edges)
    colour_adj = {c: [0] * g.n for c in k.colours()}
    count = 0

    def creates_clique(c: int, u: int, v: int) -> bool:
        adj = colour_adj[c]
        common = adj[u] & adj[v]
        need = k[c] - 2
        if need == 1:
            return common != 0
        masked = [adj[x] & common if (common >> x) & 1 else 0 for x in range(g.n)]
        return has_clique(masked, need) is not None

    def dfs(idx: int):
        nonlocal count
        if idx == len(edges):
            count += 1
            return
        u, v = edges[idx]
        for c in k.colours():
            if creates_clique(c, u, v):
                continue
            colour_adj[c][u] |= 1 << v
            colour_adj[c][v] |= 1 << u
            dfs(idx + 1)
            colour_adj[c][u] &= ~(1 << v)
            colour_adj[c][v] &= ~(1 << u)

    dfs(0)
    return count


def _canonical_graph_code(n: int, edges: frozenset) -> int:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    index = {p: b for b, p in enumerate(pairs)}
    best = None
    for perm in itertools.permutations(range(n)):
        m = 0
        for u, v in edges:
            a, b = perm[u], perm[v]
            m |= 1 << index[(min(a, b), max(a, b))]
        if best is None or m < best:
            best = m
    return best


def is_complete_multipartite(g: SimpleGraph) -> bool:
    """True iff the complement is a disjoint union of cliques."""
    comp = g.complement().adjacency_masks()
    seen = [False] * g.n
    for v in range(g.n):
        if seen[v]:
            continue
        # component by BFS
        stack, members = [v], set()
        while stack:
            u = stack.pop()
            if u in members:
                continue
            members.add(u)
            for w in range(g.n):
                if (comp[u] >> w) & 1 and w not in members:
                    stack.append(w)
        for a in members:
            seen[a] = True
            for b in members:
                if a < b and not (comp[a] >> b) & 1:
                    return False
    return True


@dataclass
class ExtremalResult:
    n: int
    k: core.ColourSeq
    maximum: int
    maximisers: list  # SimpleGraph representatives, one per iso class
    all_complete_multipartite: bool
    classes_examined: int


def extremal_search(n: int, k: core.ColourSeq) -> ExtremalResult:
    """Maximise F(G; k) over all graphs on n vertices, up to isomorphism.

    Graphs are generated level-wise by edge additions from the empty graph,
    deduplicated by canonical code; every isomorphism class contains a chain
    down to the empty graph, so the sweep is exhaustive.
    """
    limit = 7 if k.s == 2 else 5
    if n > limit:
        raise TooLarge(f"extremal search limited to n <= {limit} for s={k.s}")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    classes = {_canonical_graph_code(n, frozenset()): frozenset()}
    all_classes = dict(classes)
    frontier = classes
    while frontier:
        nxt = {}
        for edges in frontier.values():
            for p in pairs:
                if p in edges:
                    continue
                e2 = edges | {p}
                code = _canonical_graph_code(n, frozenset(e2))
                if code not in all_classes and code not in nxt:
                    nxt[code] = frozenset(e2)
        all_classes.update(nxt)
        frontier = nxt
    best = -1
    maximisers = []
    for edges in all_classes.values():
        g = SimpleGraph(n, edges)
        f = count_valid_colourings(g, k)
        if f > best:
            best, maximisers = f, [g]
        elif f == best:
            maximisers.append(g)
    return ExtremalResult(
        n=n,
        k=k,
        maximum=best,
        maximisers=maximisers,
        all_complete_multipartite=all(is_complete_multipartite(g) for g in maximisers),
        classes_examined=len(all_classes),
    )


def round_weights(weighting, n: int) -> list:
    """Integer part sizes summing to n, by largest remainder (ties to the
    smaller index)."""
    fracs = [Fraction(w) if isinstance(w, (int, Fraction)) else Fraction(w).limit_denominator(10**9) for w in weighting]
    floors = [int(f * n) for f in fracs]
    rem = n - sum(floors)
    order = sorted(range(len(fracs)), key=lambda i: (-(fracs[i] * n - floors[i]), i))
    for i in order[:rem]:
        floors[i] += 1
    return floors


def pattern_colouring_count(triple: core.FeasibleTriple, n: int) -> int:
    """Colourings realised by the blow-up of a pattern with n vertices:
    the exact product of |phi(ij)|^(n_i * n_j)."""
    sizes = round_weights(triple.weighting, n)
    total = 1
    pattern = triple.pattern
    for (i, j), cs in pattern.assignment.items():
        m = len(cs)
        if m == 0:
            if sizes[i] and sizes[j]:
                return 0
            continue
        total *= m ** (sizes[i] * sizes[j])
    return total
