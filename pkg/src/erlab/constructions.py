"""Built-in candidate optimal triples for the known solved cases."""

from __future__ import annotations

from fractions import Fraction

from .core import ColourPattern, ColourSeq, FeasibleTriple


def full_clique_triple(r: int, s: int) -> FeasibleTriple:
    """All pairs carry every colour, uniform weights (optimal for (k;s), s<=3,
    with r = k-1)."""
    full = frozenset(range(1, s + 1))
    pattern = ColourPattern(r, {(i, j): full for i in range(r) for j in range(i + 1, r)})
    alpha = tuple(Fraction(1, r) for _ in range(r))
    return FeasibleTriple(pattern, alpha, level=2)


def four_colour_triangle_triple() -> FeasibleTriple:
    """r=4 candidate for four colours forbidding triangles.

    Each colour graph is a 4-cycle (complement of a perfect matching on
    4 vertices); colours 1 and 2 share a cycle, so two pairs have two
    colours and four pairs have three.
    """
    matchings = {
        1: {(0, 1), (2, 3)},
        2: {(0, 1), (2, 3)},
        3: {(0, 2), (1, 3)},
        4: {(0, 3), (1, 2)},
    }
    assignment = {}
    for i in range(4):
        for j in range(i + 1, 4):
            assignment[(i, j)] = frozenset(
                c for c, m in matchings.items() if (i, j) not in m
            )
    alpha = tuple(Fraction(1, 4) for _ in range(4))
    return FeasibleTriple(ColourPattern(4, assignment), alpha, level=2)


def affine_plane_triple() -> FeasibleTriple:
    """r=9 candidate for four colours forbidding K_4, from AG(2,3).

    Points are GF(3)^2; the four parallel classes of lines (slopes 0, 1, 2
    and infinity) index the colours.  A pair lies on exactly one line, so it
    misses exactly the colour of that line's class: every multiplicity is 3
    and each colour graph is the balanced complete 3-partite graph on 9
    vertices.
    """
    points = [(x, y) for x in range(3) for y in range(3)]

    def line_class(p, q):
        dx, dy = (q[0] - p[0]) % 3, (q[1] - p[1]) % 3
        if dx == 0:
            return 4  # vertical lines
        inv = 1 if dx == 1 else 2  # inverse of dx in GF(3)
        return (dy * inv) % 3 + 1  # slope 0,1,2 -> classes 1,2,3

    assignment = {}
    for a in range(9):
        for b in range(a + 1, 9):
            c = line_class(points[a], points[b])
            assignment[(a, b)] = frozenset(set(range(1, 5)) - {c})
    alpha = tuple(Fraction(1, 9) for _ in range(9))
    return FeasibleTriple(ColourPattern(9, assignment), alpha, level=2)


def known_optimum(k: ColourSeq) -> FeasibleTriple | None:
    """The table construction for k, when one is built in."""
    entries = k.entries
    if k.s == 2:
        return full_clique_triple(entries[1] - 1, 2)
    if k.s == 3 and len(set(entries)) == 1:
        return full_clique_triple(entries[0] - 1, 3)
    if entries == (3, 3, 3, 3):
        return four_colour_triangle_triple()
    if entries == (4, 4, 4, 4):
        return affine_plane_triple()
    return None
