"""Finite-scale geometric duality checks and the perfect-graph equivalence.

check_0V and check_2V decide the restricted-ball identities for arbitrary
hereditary families; duality_report ties them to the two perfection tests
and Chvatal's polytope equality for clique families, sweeping induced
subsets.  Sweep results are memoised per graph-isomorphism class (every
check here is invariant under relabeling), which is what makes the shipped
<= 7-vertex corpus sweep affordable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import exact, families, graphs, norms
from .errors import EquivalenceViolation, Infeasible
from .exact import ONE, ZERO

DEFAULT_LIMIT = exact.DEFAULT_DIMENSION_LIMIT


# ---------------------------------------------------------------------------
# hull membership on the positive cone
# ---------------------------------------------------------------------------

def dominated_by_hull(point, member_sets, ground) -> bool:
    """Is a nonnegative point below conv of the given indicator vectors?

    For hereditary families, membership of x in conv(W(H)) reduces to
    |x| <= sum(lambda_A chi_A) with convex lambda over maximal members:
    signs flip freely and mass moves down inside the hull, so dominance is
    equivalent to membership.
    """
    pos = {v: i for i, v in enumerate(ground)}
    k = len(member_sets)
    n = len(ground)
    if k == 0:
        return all(c == 0 for c in point)
    # columns: lambda_1..k, slack_1..n ; rows: coverage per coordinate, sum=1
    a = []
    b = []
    for i in range(n):
        row = [ONE if ground[i] in m else ZERO for m in member_sets]
        row += [-ONE if j == i else ZERO for j in range(n)]
        a.append(row)
        b.append(abs(Fraction(point[i])))
    a.append([ONE] * k + [ZERO] * n)
    b.append(ONE)
    try:
        exact._simplex_standard(a, b, [ZERO] * (k + n))
    except Infeasible:
        return False
    return True


# ---------------------------------------------------------------------------
# the (0_V) and (2_V) conditions
# ---------------------------------------------------------------------------

def check_0V(f, v_set, limit: int = DEFAULT_LIMIT) -> bool:
    """B(X_{F|V}) equals the polar of B(X_{F-perp|V}), by mutual vertex containment."""
    v = tuple(sorted(v_set))
    if len(v) > limit:
        raise exact.DimensionLimitExceeded(f"|V|={len(v)} exceeds limit {limit}")
    ctx = norms.NormContext(f, v)
    perp_ctx = norms.NormContext(families.perp(f), v)

    ball = norms.ball_data(ctx)
    perp_ball, polar_vertices = norms.polar_ball_vertices(perp_ctx)

    # vertices of the F-ball inside the polar: test against its H-form,
    # one inequality per vertex of the F-perp ball (sign-reduced)
    for u in ball.max_ext:
        for w in perp_ball.max_ext:
            if sum(a * b for a, b in zip(u, w)) > 1:
                return False
    # vertices of the polar inside the F-ball
    for q in polar_vertices:
        if norms.norm(ctx, q) > 1:
            return False
    return True


def check_2V(f, v_set, limit: int = DEFAULT_LIMIT) -> bool:
    """B(X_{F|V}) == conv(W(F-perp|V)): ball vertices in the hull and back."""
    v = tuple(sorted(v_set))
    if len(v) > limit:
        raise exact.DimensionLimitExceeded(f"|V|={len(v)} exceeds limit {limit}")
    ctx = norms.NormContext(f, v)
    fperp = families.perp(f)
    perp_max = fperp.max_elements(v)

    ball = norms.ball_data(ctx)
    for u in ball.max_ext:
        if not dominated_by_hull(u, perp_max, v):
            return False
    # conversely every sign vector of the orthogonal family lies in the ball
    for m in perp_max:
        if m and norms.norm(ctx, {i: ONE for i in m}) > 1:
            return False
    return True


def check_2V_flagged(f, v_set, limit: int = DEFAULT_LIMIT) -> tuple[bool, dict]:
    """check_2V plus a not_graph_generated flag for non clique-backed input."""
    flags = {}
    if getattr(f, "graph", None) is None:
        generated, witness = families.is_graph_generated(f)
        if not generated:
            flags["not_graph_generated"] = sorted(witness)
    return check_2V(f, v_set, limit), flags


# ---------------------------------------------------------------------------
# Chvatal's polytope equality
# ---------------------------------------------------------------------------

def fractional_stable_polytope_vertices(g) -> list[tuple[Fraction, ...]]:
    """Vertices of {x in [0,1]^V : x(C) <= 1 for every clique C}.

    Only maximal-clique rows are kept; the box constraints are implied since
    every vertex lies in some maximal clique.
    """
    rows = norms._indicator_rows(g.vertices, graphs.maximal_cliques(g))
    return exact.vertices_nonneg_system(rows, g.n)


def check_chvatal(g, limit: int = DEFAULT_LIMIT) -> bool:
    """Vertex set of the fractional stable-set polytope == anticlique indicators."""
    ok, _ = chvatal_detail(g, limit)
    return ok


def chvatal_detail(g, limit: int = DEFAULT_LIMIT):
    if g.n > limit:
        raise exact.DimensionLimitExceeded(f"|V|={g.n} exceeds limit {limit}")
    verts = fractional_stable_polytope_vertices(g)
    fractional = [v for v in verts if any(c != 0 and c != 1 for c in v)]
    if fractional:
        return False, sorted(fractional)[0]
    vert_sets = {frozenset(g.vertices[i] for i, c in enumerate(v) if c == 1) for v in verts}
    anti = graphs.anticliques(g)
    anticlique_sets = set(anti.members())
    if vert_sets != anticlique_sets:
        # cannot happen: integral points of the polytope are anticliques
        diff = vert_sets ^ anticlique_sets
        return False, sorted(diff, key=families.colex_key)[0]
    return True, None


# ---------------------------------------------------------------------------
# the five-way report over induced subsets
# ---------------------------------------------------------------------------

@dataclass
class DualityReport:
    perfect_spgt: bool
    perfect_chi_omega: bool
    chvatal: bool
    c0V_all: bool
    c2V_all: bool

    def as_dict(self) -> dict:
        return {"perfect_spgt": self.perfect_spgt,
                "perfect_chi_omega": self.perfect_chi_omega,
                "chvatal": self.chvatal,
                "c0V_all": self.c0V_all,
                "c2V_all": self.c2V_all}

    def agree(self) -> bool:
        vals = set(self.as_dict().values())
        return len(vals) == 1


@dataclass
class _ClassRecord:
    chvatal: bool
    c0: bool
    c2: bool
    chi_omega_here: bool  # chi == omega for the representative itself


class ClassCache:
    """Per-isomorphism-class results for clique-family duality checks."""

    def __init__(self):
        self.records: dict[tuple, _ClassRecord] = {}
        self.canon_by_mask: dict[tuple, tuple] = {}

    def canon(self, g) -> tuple:
        raw = (g.n, graphs._edge_mask(g))
        hit = self.canon_by_mask.get(raw)
        if hit is None:
            hit = graphs.canonical_form(g)
            self.canon_by_mask[raw] = hit
        return hit

    def record(self, g) -> _ClassRecord:
        key = self.canon(g)
        rec = self.records.get(key)
        if rec is None:
            rep = graphs.graph_from_canonical(*key)
            fam = graphs.cliques(rep)
            rec = _ClassRecord(
                chvatal=check_chvatal(rep),
                c0=check_0V(fam, rep.vertices),
                c2=check_2V(fam, rep.vertices),
                chi_omega_here=graphs.chromatic_number(rep) == graphs.clique_number(rep),
            )
            self.records[key] = rec
        return rec


GLOBAL_CACHE = ClassCache()


def _sweep_subsets(g, limit: int):
    """Induced subsets to sweep: the full power set up to 7 vertices,
    hole/antihole witnesses plus seeded random subsets above that."""
    vs = g.vertices
    if g.n <= 7:
        for r in range(1, g.n + 1):
            yield from itertools.combinations(vs, r)
        return
    for r in range(1, 4):
        yield from itertools.combinations(vs, r)
    hole = graphs.find_odd_hole(g, limit)
    antihole = graphs.find_odd_antihole(g, limit)
    seen = set()
    for wit in (hole, antihole):
        if wit:
            key = tuple(sorted(wit))
            seen.add(key)
            yield key
    rng = random.Random(graphs._edge_mask(g))
    for _ in range(40):
        r = rng.randint(4, min(7, g.n))
        key = tuple(sorted(rng.sample(vs, r)))
        if key not in seen:
            seen.add(key)
            yield key


def duality_report(g, limit: int = DEFAULT_LIMIT, cache: ClassCache | None = None) -> DualityReport:
    """Run all five equivalent checks of the duality theorem on one graph.

    Subset checks are fetched from the isomorphism-class cache; monotone
    restriction makes each class's full-ground answer the answer for every
    occurrence of that induced subgraph.
    """
    if g.n > graphs.DEFAULT_SIZE_LIMIT:
        raise graphs.SizeLimitExceeded(f"{g.n} vertices exceeds limit {graphs.DEFAULT_SIZE_LIMIT}")
    cache = cache or GLOBAL_CACHE
    spgt = graphs.is_perfect(g, "spgt")
    c0_all = True
    c2_all = True
    chi_omega = True
    for subset in _sweep_subsets(g, limit):
        rec = cache.record(g.induced(subset))
        c0_all = c0_all and rec.c0
        c2_all = c2_all and rec.c2
        chi_omega = chi_omega and rec.chi_omega_here
    chv = cache.record(g).chvatal
    report = DualityReport(spgt, chi_omega, chv, c0_all, c2_all)
    if not report.agree():
        d = report.as_dict()
        names = sorted(d)
        first_true = next(k for k in names if d[k])
        first_false = next(k for k in names if not d[k])
        raise EquivalenceViolation(first_true, first_false, detail=str(d))
    return report


def corpus_sweep(max_n: int = 7, cache: ClassCache | None = None, corpus=None):
    """duality_report over the shipped corpus; returns a summary dict.

    Graphs are processed in increasing size so the class cache warms up on
    the induced-subgraph closure as it goes.
    """
    cache = cache or ClassCache()
    if corpus is None:
        corpus = graphs.load_corpus(max_n=max_n)
    corpus = sorted(corpus, key=lambda g: g.n)
    perfect = 0
    imperfect = 0
    first_disagreement = None
    for g in corpus:
        try:
            rep = duality_report(g, cache=cache)
        except EquivalenceViolation as exc:
            first_disagreement = {"graph": graphs.to_json_dict(g), "detail": str(exc)}
            break
        if rep.perfect_spgt:
            perfect += 1
        else:
            imperfect += 1
    return {"graphs": len(corpus), "perfect": perfect, "imperfect": imperfect,
            "first_disagreement": first_disagreement}
