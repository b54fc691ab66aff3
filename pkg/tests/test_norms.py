import itertools
import random
from fractions import Fraction

import pytest

from combinorm import exact, families, graphs, norms
from combinorm.errors import InputError

from oracles import brute_family_norm, brute_members

F = Fraction


def ctx_of(fam, ground=None):
    return norms.context(fam, ground)


def test_norm_k2_edge():
    k2 = graphs.complete_graph(2)
    c = ctx_of(graphs.cliques(k2))
    assert norms.norm(c, {1: F(1), 2: F(1)}) == 2


def test_norm_schreier_characteristic_vectors():
    s = families.schreier(1, truncation=8)
    c = ctx_of(s)
    assert norms.norm(c, {3: F(1), 4: F(1), 5: F(1)}) == 3
    assert norms.norm(c, {2: F(1), 3: F(1), 4: F(1)}) == 2


def test_norm_c5_half_vector():
    c5 = graphs.cycle_graph(5)
    c = ctx_of(graphs.cliques(c5))
    x = {v: F(1, 2) for v in range(1, 6)}
    assert norms.norm(c, x) == 1


def test_norm_matches_brute_oracle_random():
    rng = random.Random(29)
    c5 = graphs.cycle_graph(5)
    s2 = families.schreier(2, truncation=6)
    for fam in (graphs.cliques(c5), s2, families.perp(s2)):
        ground = fam.universe
        members = brute_members(lambda e: fam.contains(e), ground)
        c = ctx_of(fam)
        for _ in range(25):
            x = {v: F(rng.randint(-6, 6), rng.randint(1, 4)) for v in ground
                 if rng.random() < 0.8}
            assert norms.norm(c, x) == brute_family_norm(members, x)


def test_norm_lattice_property_and_unit_vectors():
    s = families.schreier(1, truncation=6)
    c = ctx_of(s)
    rng = random.Random(31)
    for v in s.universe:
        assert norms.norm(c, {v: F(1)}) == 1
    for _ in range(20):
        x = {v: F(rng.randint(-5, 5), rng.randint(1, 3)) for v in s.universe}
        y = {v: x[v] * F(rng.randint(0, 3), 3) for v in s.universe}
        assert norms.norm(c, y) <= norms.norm(c, x)


def test_norm_rejects_support_outside_ground():
    s = families.schreier(1, truncation=6)
    c = ctx_of(s, (1, 2, 3))
    with pytest.raises(InputError):
        norms.norm(c, {5: F(1)})


def test_unit_ball_shapes():
    le1 = families.bounded_card_family({1, 2}, 1)
    square = norms.unit_ball(ctx_of(le1))
    assert sorted(exact.vertices(square)) == sorted(
        (F(a), F(b)) for a in (-1, 1) for b in (-1, 1))

    full = families.all_subsets_family({1, 2})
    cross = norms.unit_ball(ctx_of(full))
    assert sorted(exact.vertices(cross)) == sorted(
        [(F(1), F(0)), (F(-1), F(0)), (F(0), F(1)), (F(0), F(-1))])

    s = families.schreier(1, truncation=3)
    ball = norms.unit_ball(ctx_of(s))
    # max members {1} and {2,3}: 2 + 4 sign-pattern inequalities
    assert len(ball.inequalities) == 6


def test_dual_norm_classical_pairs():
    le1 = families.bounded_card_family({1, 2}, 1)
    assert norms.dual_norm(ctx_of(le1), {1: F(1), 2: F(1)}) == 2
    full = families.all_subsets_family({1, 2})
    assert norms.dual_norm(ctx_of(full), {1: F(1), 2: F(1)}) == 1
    s = families.schreier(1, truncation=3)
    assert norms.dual_norm(ctx_of(s), {1: F(1), 2: F(1), 3: F(1)}) == 2


def test_dual_norm_is_vertex_max_random():
    rng = random.Random(37)
    s = families.schreier(1, truncation=5)
    c = ctx_of(s)
    pts = norms.ball_extreme_points(c)
    for _ in range(15):
        alpha = {v: F(rng.randint(-4, 4), rng.randint(1, 3)) for v in c.ground}
        want = max(exact.vec_dot(alpha, p) for p in pts)
        assert norms.dual_norm(c, alpha) == want


def test_ball_extreme_points_le1():
    le1 = families.bounded_card_family({1, 2}, 1)
    pts = norms.ball_extreme_points(ctx_of(le1))
    assert {exact.vec_key(p) for p in pts} == {
        exact.vec_key({1: F(a), 2: F(b)}) for a in (1, -1) for b in (1, -1)}


def test_ball_extreme_points_path_and_c5():
    path = graphs.path_graph(3)
    pts = norms.ball_extreme_points(ctx_of(graphs.cliques(path)))
    keys = {exact.vec_key(p) for p in pts}
    assert exact.vec_key({1: F(1), 3: F(1)}) in keys
    # path is perfect: extreme points = sign vectors of maximal anticliques
    anti_max = graphs.anticliques(path).max_elements()
    sv = families.sign_vectors(anti_max)
    assert keys == {exact.vec_key({k: F(s) for k, s in v.items()}) for v in sv}

    c5 = graphs.cycle_graph(5)
    pts5 = norms.ball_extreme_points(ctx_of(graphs.cliques(c5)))
    keys5 = {exact.vec_key(p) for p in pts5}
    anti5 = families.sign_vectors(graphs.anticliques(c5).max_elements())
    terminal = {exact.vec_key({k: F(s) for k, s in v.items()}) for v in anti5}
    assert terminal < keys5
    halves = {exact.vec_key({v: s * F(1, 2) for v, s in zip(range(1, 6), signs)})
              for signs in itertools.product((1, -1), repeat=5)}
    assert keys5 == terminal | halves


def test_ball_extreme_points_match_generic_enumeration():
    """Positive-part reduction agrees with raw inequality-subset enumeration."""
    cases = [families.bounded_card_family({1, 2, 3}, 1),
             families.schreier(1, truncation=4),
             graphs.cliques(graphs.cycle_graph(5)),
             graphs.cliques(graphs.path_graph(4))]
    for fam in cases:
        c = ctx_of(fam)
        fast = {c.dense(p) for p in norms.ball_extreme_points(c)}
        generic = set(exact.vertices(norms.unit_ball(c)))
        assert fast == generic, fam.tag


def test_norm_equals_polar_vertex_max_random():
    rng = random.Random(41)
    s = families.schreier(1, truncation=5)
    c = ctx_of(s)
    _, polar_pts = norms.polar_ball_vertices(c)
    for _ in range(15):
        x = {v: F(rng.randint(-5, 5), rng.randint(1, 4)) for v in c.ground}
        want = max(exact.vec_dot(x, w) for w in polar_pts)
        assert norms.norm(c, x) == want


def test_dual_extreme_check_trio():
    le1 = families.bounded_card_family({1, 2, 3}, 1)
    assert norms.dual_extreme_check(ctx_of(le1))
    s = families.schreier(1, truncation=4)
    assert norms.dual_extreme_check(ctx_of(s))
    c5 = graphs.cliques(graphs.cycle_graph(5))
    assert norms.dual_extreme_check(ctx_of(c5))
