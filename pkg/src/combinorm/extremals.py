"""Extreme points of graph-norm balls: terminal points, odd-hole extension,
antihole circulant points, and the rational-value gadget."""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import exact, families, graphs, norms
from .errors import InputError, NotAnOddHole, NotOnSphere

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

Vec = dict[int, Fraction]


def terminal_points(g) -> list[Vec]:
    """Sign vectors supported on the maximal anticliques."""
    max_anti = graphs.anticliques(g).max_elements()
    return [{v: Fraction(s) for v, s in sv.items()}
            for sv in families.sign_vectors(max_anti)]


# ---------------------------------------------------------------------------
# vertex test on the clique-norm ball
# ---------------------------------------------------------------------------

def active_constraints(g, x: Vec):
    """Tight maximal cliques and the span generators of their sign patterns.

    A tight clique C contributes its sign pattern on C intersected with the
    support plus, through the free sign choices on its zero coordinates, the
    unit vectors there; spanning those directly avoids the 2^k sign sweep.
    """
    verts = list(g.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    supp = exact.vec_support(x)
    tight = []
    gens: list[list[Fraction]] = []
    zero_units: set[int] = set()
    for clique in graphs.maximal_cliques(g):
        mass = sum((abs(x[v]) for v in clique if v in supp), ZERO)
        if mass != 1:
            continue
        tight.append(clique)
        row = [ZERO] * len(verts)
        for v in clique & supp:
            row[pos[v]] = ONE if x[v] > 0 else -ONE
        gens.append(row)
        zero_units |= {pos[v] for v in clique - supp}
    for i in sorted(zero_units):
        unit = [ZERO] * len(verts)
        unit[i] = ONE
        gens.append(unit)
    return tight, gens


def is_extreme(g, x: Vec) -> bool:
    """Is x a vertex of the unit ball of the clique norm of g?"""
    x = exact.vec_clean(x)
    if not exact.vec_support(x) <= set(g.vertices):
        raise InputError("vector support outside the graph")
    ctx = norms.context(graphs.cliques(g))
    if norms.norm(ctx, x) != 1:
        raise NotOnSphere("vector is not on the unit sphere")
    _, gens = active_constraints(g, x)
    return exact.rank(gens) == g.n


# ---------------------------------------------------------------------------
# odd-hole extension
# ---------------------------------------------------------------------------

def _validate_hole(g, hole) -> list[int]:
    cycle = list(hole)
    k = len(cycle)
    if k < 5 or k % 2 == 0:
        raise NotAnOddHole(f"cycle length {k} is not odd and >= 5")
    if len(set(cycle)) != k or not set(cycle) <= set(g.vertices):
        raise NotAnOddHole("cycle vertices invalid")
    order = graphs._induced_cycle_order(g, set(cycle))
    if order is None:
        raise NotAnOddHole("vertices do not induce a chordless cycle")
    return cycle


def extend_half(g, hole) -> Vec:
    """Extreme point valued 1/2 on the given odd hole, by the four-rule recursion.

    Vertices adjacent to the grown region enter in ascending id; each gets 0,
    1, or 1/2 by the first applicable rule.  Components not meeting the hole
    receive a terminal point (all-ones on the colex-first maximal anticlique).
    """
    cycle = _validate_hole(g, hole)
    region = set(cycle)
    x: Vec = {v: HALF for v in cycle}
    while True:
        frontier = [v for v in g.vertices if v not in region
                    and g.adjacency[v] & region]
        if not frontier:
            break
        k = min(frontier)
        nbrs = g.adjacency[k] & region
        if any(x.get(u, ZERO) == 1 for u in nbrs):
            value = ZERO
        elif any(x.get(u, ZERO) == HALF and x.get(w, ZERO) == HALF
                 and g.has_edge(u, w)
                 for u, w in itertools.combinations(sorted(nbrs), 2)):
            value = ZERO
        elif all(x.get(u, ZERO) == 0 for u in nbrs):
            value = ONE
        else:
            value = HALF
        if value != 0:
            x[k] = value
        region.add(k)

    leftover = set(g.vertices) - region
    while leftover:
        comp = _component(g, min(leftover))
        anti_max = graphs.anticliques(g.induced(comp)).max_elements()
        first = sorted(anti_max, key=families.colex_key)[0]
        for v in first:
            x[v] = ONE
        leftover -= comp
    return x


def _component(g, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


# ---------------------------------------------------------------------------
# antihole points and the rational gadget
# ---------------------------------------------------------------------------

def antihole_clique_matrix(n: int):
    """Circulant 0/1 matrix whose rows are the maximal cliques of the
    (2n+1)-antihole, listed as cyclic shifts of {1, 3, ..., 2n-1}."""
    size = 2 * n + 1
    base = [1 if j % 2 == 0 and j < 2 * n else 0 for j in range(size)]
    rows = []
    for shift in range(size):
        rows.append([Fraction(base[(j - shift) % size]) for j in range(size)])
    return rows


def antihole_point(n: int, signs: dict[int, int] | None = None):
    """The (2n+1)-antihole with the 1/n vector; checks the circulant rank."""
    if n < 2:
        raise InputError("antihole points need n >= 2")
    size = 2 * n + 1
    g = graphs.antihole_graph(size)
    rows = antihole_clique_matrix(n)
    row_sets = {frozenset(j + 1 for j, c in enumerate(r) if c) for r in rows}
    if row_sets != set(graphs.maximal_cliques(g)):
        raise InputError("internal: circulant rows disagree with maximal cliques")
    if exact.determinant(rows) == 0:
        raise InputError("internal: antihole clique matrix is singular")
    sign_of = {v: 1 for v in g.vertices}
    if signs:
        sign_of.update({v: (1 if s > 0 else -1) for v, s in signs.items()})
    x = {v: sign_of[v] * Fraction(1, n) for v in g.vertices}
    return g, x


def rational_gadget(q) -> tuple:
    """Graph, extreme vector, and the vertex carrying the requested value.

    For q = i/n in lowest terms a (2n+1)-antihole at 1/n plus one vertex w
    joined to a non-maximal clique of size n-i valued i/n; endpoints and 0
    fall back to one- and two-vertex graphs.
    """
    q = Fraction(q)
    if abs(q) > 1:
        raise InputError(f"value {q} outside [-1, 1]")
    sign = -1 if q < 0 else 1
    mag = abs(q)
    if mag == 1:
        g = graphs.complete_graph(1)
        return g, {1: q}, 1
    if mag == 0:
        g = graphs.complete_graph(2)
        return g, {1: ONE}, 2
    i, n = mag.numerator, mag.denominator
    size = 2 * n + 1
    g_anti = graphs.antihole_graph(size)
    w = size + 1
    clique = tuple(range(1, 2 * (n - i), 2))  # {1, 3, ..., 2(n-i)-1}, size n-i
    edges = [tuple(sorted(e)) for e in g_anti.edges] + [(c, w) for c in clique]
    g = graphs.from_edges(range(1, w + 1), edges)

    a_rows = antihole_clique_matrix(n)
    bordered = [row + [ZERO] for row in a_rows]
    bordered.append([ONE if v in clique else ZERO for v in range(1, size + 1)] + [ONE])
    if exact.determinant(bordered) == 0:
        raise InputError("internal: bordered gadget matrix is singular")
    x = {v: sign * Fraction(1, n) for v in range(1, size + 1)}
    x[w] = sign * Fraction(i, n)
    return g, x, w
