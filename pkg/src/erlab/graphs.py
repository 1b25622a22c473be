"""Simple graphs on [n] with bitmask adjacency, and exact clique routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        norm = frozenset((min(u, v), max(u, v)) for u, v in self.edges)
        for u, v in norm:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) outside [0,{self.n})")
        object.__setattr__(self, "edges", norm)

    def adjacency_masks(self) -> list[int]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def complement(self) -> "SimpleGraph":
        comp = {
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in self.edges
        }
        return SimpleGraph(self.n, frozenset(comp))


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def turan_graph(parts: int, n: int) -> SimpleGraph:
    """Complete multipartite graph with `parts` balanced classes on n vertices."""
    cls = [i % parts for i in range(n)]
    edges = {
        (u, v) for u in range(n) for v in range(u + 1, n) if cls[u] != cls[v]
    }
    return SimpleGraph(n, frozenset(edges))


def max_clique_masks(adj: list[int]) -> tuple[int, list[int]]:
    """Exact clique number via branch and bound with greedy colouring bound.

    Returns (size, witness vertices).
    """
    n = len(adj)
    if n == 0:
        return 0, []
    best: list[int] = []

    def colour_bound(cand: list[int]) -> list[tuple[int, int]]:
        # greedy colouring of candidates; returns (vertex, colour class index)
        order: list[tuple[int, int]] = []
        uncoloured = list(cand)
        colour = 0
        while uncoloured:
            colour += 1
            cls_mask = 0
            rest = []
            for v in uncoloured:
                if adj[v] & cls_mask:
                    rest.append(v)
                else:
                    cls_mask |= 1 << v
                    order.append((v, colour))
            uncoloured = rest
        return order

    def expand(clique: list[int], cand_mask: int):
        nonlocal best
        cand = [v for v in range(n) if cand_mask >> v & 1]
        order = colour_bound(cand)
        for v, colour in reversed(order):
            if len(clique) + colour <= len(best):
                return
            clique.append(v)
            new_mask = cand_mask & adj[v]
            if new_mask:
                expand(clique, new_mask)
            elif len(clique) > len(best):
                best = clique.copy()
            clique.pop()
            cand_mask &= ~(1 << v)

    expand([], (1 << n) - 1)
    return len(best), sorted(best)


def max_clique(g: SimpleGraph) -> tuple[int, list[int]]:
    return max_clique_masks(g.adjacency_masks())


def has_clique(adj: list[int], k: int) -> list[int] | None:
    """A clique of size k in the bitmask adjacency, or None.

    Cheap incremental check used while growing colour graphs: k is small
    (clique orders are at least 3 and rarely above 6).
    """
    n = len(adj)
    if k <= 0:
        return []
    if k == 1:
        return [0] if n else None

    def grow(clique: list[int], cand_mask: int) -> list[int] | None:
        if len(clique) == k:
            return clique.copy()
        need = k - len(clique)
        if bin(cand_mask).count("1") < need:
            return None
        m = cand_mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            clique.append(v)
            found = grow(clique, cand_mask & adj[v] & ~((1 << (v + 1)) - 1))
            clique.pop()
            if found is not None:
                return found
            cand_mask &= ~(1 << v)
        return None

    return grow([], (1 << n) - 1)


def maximal_cliques(g: SimpleGraph) -> list[list[int]]:
    """All maximal cliques (Bron-Kerbosch with pivoting)."""
    adj = g.adjacency_masks()
    n = g.n
    out: list[list[int]] = []

    def bk(r_mask: int, p_mask: int, x_mask: int):
        if p_mask == 0 and x_mask == 0:
            out.append([v for v in range(n) if r_mask >> v & 1])
            return
        # pivot: vertex of P|X with most neighbours in P
        pivot, best_deg = -1, -1
        m = p_mask | x_mask
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            deg = bin(p_mask & adj[u]).count("1")
            if deg > best_deg:
                pivot, best_deg = u, deg
        ext = p_mask & ~adj[pivot]
        while ext:
            v = (ext & -ext).bit_length() - 1
            ext &= ext - 1
            bk(r_mask | (1 << v), p_mask & adj[v], x_mask & adj[v])
            p_mask &= ~(1 << v)
            x_mask |= 1 << v

    bk(0, (1 << n) - 1, 0)
    return out


def graph_to_json(g: SimpleGraph) -> dict:
    return {"n": g.n, "edges": sorted([u + 1, v + 1] for u, v in g.edges)}


def graph_from_json(obj: dict) -> SimpleGraph:
    n = int(obj["n"])
    edges = frozenset((int(u) - 1, int(v) - 1) for u, v in obj.get("edges", []))
    return SimpleGraph(n, edges)
