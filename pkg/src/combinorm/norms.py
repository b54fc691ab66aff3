"""Family norms, unit-ball polytopes, and their extreme points.

The unit ball of a family norm is 1-unconditional and solid, so all vertex
work reduces to the positive part B+ = {x >= 0 : sum over each maximal
member <= 1}: the ball's extreme points are exactly the sign expansions of
the coordinatewise-maximal vertices of B+.  That reduction is what keeps
exact enumeration cheap enough for seven-dimensional sweeps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import exact
from .errors import InputError
from .exact import ONE, ZERO, Polytope

Vec = dict[int, Fraction]


@dataclass(frozen=True)
class NormContext:
    family: object
    ground: tuple[int, ...]

    def __post_init__(self):
        g = tuple(sorted(set(self.ground)))
        object.__setattr__(self, "ground", g)
        if not g:
            raise InputError("ground must be non-empty")
        uni = set(self.family.universe)
        if not set(g) <= uni:
            raise InputError("ground not within family universe")
        for v in g:
            if not self.family.contains({v}):
                raise InputError(f"family does not cover ground element {v}")

    def dense(self, x: Vec) -> tuple[Fraction, ...]:
        return tuple(Fraction(x.get(v, 0)) for v in self.ground)

    def sparse(self, point) -> Vec:
        return {v: Fraction(c) for v, c in zip(self.ground, point) if c != 0}


def context(family, ground=None) -> NormContext:
    return NormContext(family, tuple(ground if ground is not None else family.universe))


# ---------------------------------------------------------------------------
# the norm itself
# ---------------------------------------------------------------------------

def norm(ctx: NormContext, x: Vec) -> Fraction:
    """sup of member mass: max over F in the family of sum_{i in F} |x(i)|.

    Hereditarity restricts the search to members inside supp(x); depth-first
    extension with a remaining-mass bound.  Graph-clique families filter
    candidates by adjacency instead of re-testing whole sets.
    """
    supp = sorted(exact.vec_support(x))
    if not set(supp) <= set(ctx.ground):
        raise InputError("vector support outside ground")
    if not supp:
        return ZERO
    weights = {i: abs(Fraction(x[i])) for i in supp}
    order = sorted(supp, key=lambda i: (-weights[i], i))
    graph = getattr(ctx.family, "graph", None)
    if graph is not None:
        adj = graph.adjacency
    best = ZERO

    def dfs(chosen: frozenset, mass: Fraction, cand: list[int]):
        nonlocal best
        if mass > best:
            best = mass
        for pos, i in enumerate(cand):
            if mass + _tail_mass(cand[pos:], weights) <= best:
                return
            nxt = chosen | {i}
            if graph is not None:
                dfs(nxt, mass + weights[i], [j for j in cand[pos + 1:] if j in adj[i]])
            elif ctx.family.contains(nxt):
                dfs(nxt, mass + weights[i], cand[pos + 1:])

    dfs(frozenset(), ZERO, order)
    return best


def _tail_mass(items, weights) -> Fraction:
    return sum((weights[i] for i in items), ZERO)


# ---------------------------------------------------------------------------
# positive-part machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BallData:
    """Shared exact geometry of one restricted unit ball."""

    ground: tuple[int, ...]
    max_members: tuple[frozenset[int], ...]
    plus_vertices: tuple[tuple[Fraction, ...], ...]
    max_ext: tuple[tuple[Fraction, ...], ...]  # coordinatewise-maximal vertices of B+


def _indicator_rows(ground, members) -> list[tuple[tuple[int, ...], int]]:
    pos = {v: i for i, v in enumerate(ground)}
    rows = []
    for m in members:
        coeffs = [0] * len(ground)
        for v in m:
            coeffs[pos[v]] = 1
        rows.append((tuple(coeffs), 1))
    return rows


def _maximal_filter(verts, rows) -> list[tuple[Fraction, ...]]:
    """Keep vertices where every coordinate sits on some tight covering row."""
    out = []
    for v in verts:
        tight = [coeffs for coeffs, bound in rows
                 if sum(c * x for c, x in zip(coeffs, v)) == bound]
        if all(any(c[i] for c in tight) for i in range(len(v))):
            out.append(v)
    return out


def ball_data(ctx: NormContext) -> BallData:
    maxm = tuple(ctx.family.max_elements(ctx.ground))
    rows = _indicator_rows(ctx.ground, maxm)
    verts = exact.vertices_nonneg_system(rows, len(ctx.ground))
    return BallData(ctx.ground, maxm, tuple(verts), tuple(_maximal_filter(verts, rows)))


def scaled_rows(points) -> list[tuple[tuple[int, ...], int]]:
    """Rational rows p.x <= 1 cleared to integer rows for the vertex engine."""
    rows = []
    for p in points:
        scale = 1
        for c in p:
            scale = scale * c.denominator // gcd(scale, c.denominator)
        rows.append((tuple(int(c * scale) for c in p), scale))
    return rows


def signed_expansions(points, ground) -> list[Vec]:
    """All sign patterns applied to each nonnegative point, as sparse vectors."""
    out = []
    seen = set()
    for p in points:
        supp = [i for i, c in enumerate(p) if c != 0]
        for signs in itertools.product((1, -1), repeat=len(supp)):
            vec = {ground[i]: s * p[i] for i, s in zip(supp, signs)}
            key = exact.vec_key(vec)
            if key not in seen:
                seen.add(key)
                out.append(vec)
    return sorted(out, key=exact.vec_key)


# ---------------------------------------------------------------------------
# spec surface: unit ball, dual norm, extreme points
# ---------------------------------------------------------------------------

def unit_ball(ctx: NormContext, dimension_limit: int = exact.DEFAULT_DIMENSION_LIMIT) -> Polytope:
    """H-representation: sigma . x <= 1 per sign pattern on each maximal member."""
    n = len(ctx.ground)
    if n > dimension_limit:
        raise exact.DimensionLimitExceeded(f"ground size {n} exceeds limit {dimension_limit}")
    pos = {v: i for i, v in enumerate(ctx.ground)}
    rows = []
    for m in ctx.family.max_elements(ctx.ground):
        items = sorted(m)
        for signs in itertools.product((ONE, -ONE), repeat=len(items)):
            normal = [ZERO] * n
            for v, s in zip(items, signs):
                normal[pos[v]] = s
            rows.append((tuple(normal), ONE))
    return Polytope(n, tuple(rows))


def dual_norm(ctx: NormContext, alpha: Vec) -> Fraction:
    """max alpha . x over the unit ball, by exact LP."""
    if not exact.vec_support(alpha) <= set(ctx.ground):
        raise InputError("functional support outside ground")
    value, _ = exact.lp_maximize(ctx.dense(alpha), unit_ball(ctx))
    return value


def ball_extreme_points(ctx: NormContext,
                        dimension_limit: int = exact.DEFAULT_DIMENSION_LIMIT) -> list[Vec]:
    """Vertices of the unit ball as sparse vectors (sign-symmetric reduction)."""
    n = len(ctx.ground)
    if n > dimension_limit:
        raise exact.DimensionLimitExceeded(f"ground size {n} exceeds limit {dimension_limit}")
    data = ball_data(ctx)
    return signed_expansions(data.max_ext, ctx.ground)


def polar_ball_vertices(ctx: NormContext) -> tuple[BallData, list[Vec]]:
    """Vertices of the polar of the unit ball.

    The polar of a ball presented by inequalities is built from the ball's
    vertex set (one inequality per vertex); by unconditionality only the
    maximal positive vertices matter, and the polar is again unconditional.
    """
    data = ball_data(ctx)
    rows = scaled_rows(data.max_ext)
    pverts = exact.vertices_nonneg_system(rows, len(ctx.ground))
    pmax = _maximal_filter(pverts, rows)
    return data, signed_expansions(pmax, ctx.ground)


def dual_extreme_check(ctx: NormContext) -> bool:
    """Extreme points of the polar ball == sign vectors of maximal members."""
    from . import families

    data, polar_vertices = polar_ball_vertices(ctx)
    expected = families.sign_vectors(data.max_members)
    got = {exact.vec_key(v) for v in polar_vertices}
    want = {exact.vec_key({k: Fraction(s) for k, s in sv.items()}) for sv in expected}
    return got == want
