import itertools
import random
from fractions import Fraction

import pytest

from combinorm import exact
from combinorm.errors import Infeasible, InputError, Unbounded

from oracles import brute_lp_over_vertices, cofactor_determinant

F = Fraction


def circulant(first_row):
    n = len(first_row)
    return [[first_row[(j - i) % n] for j in range(n)] for i in range(n)]


def test_rat_parse_format_roundtrip():
    assert exact.parse_rat("3/4") == F(3, 4)
    assert exact.parse_rat("-7") == F(-7)
    assert exact.format_rat(F(3, 4)) == "3/4"
    assert exact.format_rat(F(5, 1)) == "5"
    with pytest.raises(InputError):
        exact.parse_rat("1/0")


def test_rank_identity_and_zero():
    assert exact.rank([[F(1), F(0)], [F(0), F(1)]]) == 2
    assert exact.rank([[F(0)] * 3 for _ in range(3)]) == 0


def test_rank_circulant_10100():
    m = circulant([F(1), F(0), F(1), F(0), F(0)])
    assert exact.rank(m) == 5
    assert exact.determinant(m) != 0


def test_determinant_small_cases():
    assert exact.determinant([[F(1), F(0)], [F(0), F(1)]]) == 1
    assert exact.determinant([[F(0), F(1)], [F(1), F(0)]]) == -1


def test_determinant_matches_cofactor_oracle():
    rng = random.Random(7)
    for n in range(1, 6):
        for _ in range(8):
            m = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
            assert exact.determinant(m) == cofactor_determinant(m)


def test_determinant_rejects_nonsquare():
    with pytest.raises(InputError):
        exact.determinant([[F(1), F(2)]])


def test_solve_square():
    a = [[F(2), F(1)], [F(1), F(-1)]]
    b = [F(5), F(1)]
    x = exact.solve_square(a, b)
    assert x == [F(2), F(1)]
    assert exact.solve_square([[F(1), F(1)], [F(2), F(2)]], [F(1), F(2)]) is None


def square_polytope():
    rows = [((F(1), F(0)), F(1)), ((F(-1), F(0)), F(1)),
            ((F(0), F(1)), F(1)), ((F(0), F(-1)), F(1))]
    return exact.Polytope.from_rows(2, rows)


def test_lp_square():
    value, point = exact.lp_maximize([F(1), F(0)], square_polytope())
    assert value == 1
    assert point[0] == 1


def test_lp_simplex_triangle():
    p = exact.Polytope.from_rows(2, [((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)])
    value, point = exact.lp_maximize([F(1), F(1)], p)
    assert value == 1
    assert sum(point) == 1


def test_lp_infeasible_and_unbounded():
    empty = exact.Polytope.from_rows(1, [((1,), 0), ((-1,), -1)])  # x <= 0, x >= 1
    with pytest.raises(Infeasible):
        exact.lp_maximize([F(1)], empty)
    halfline = exact.Polytope.from_rows(1, [((-1,), 0)])  # x >= 0
    with pytest.raises(Unbounded):
        exact.lp_maximize([F(1)], halfline)


def c5_fractional_stable_polytope():
    """x >= 0 and x_i + x_{i+1} <= 1 along the 5-cycle."""
    rows = []
    for i in range(5):
        normal = [F(0)] * 5
        normal[i] = F(-1)
        rows.append((tuple(normal), F(0)))
    for i in range(5):
        normal = [F(0)] * 5
        normal[i] = F(1)
        normal[(i + 1) % 5] = F(1)
        rows.append((tuple(normal), F(1)))
    return exact.Polytope.from_rows(5, rows)


def test_lp_c5_fractional_optimum():
    p = c5_fractional_stable_polytope()
    value, point = exact.lp_maximize([F(1)] * 5, p)
    assert value == F(5, 2)
    assert sorted(point) == [F(1, 2)] * 5


def test_vertices_square_and_triangle():
    assert exact.vertices(square_polytope()) == sorted(
        {(F(sx), F(sy)) for sx in (-1, 1) for sy in (-1, 1)})
    tri = exact.Polytope.from_rows(2, [((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)])
    assert set(exact.vertices(tri)) == {(F(0), F(0)), (F(1), F(0)), (F(0), F(1))}


def test_vertices_c5_fractional():
    verts = set(exact.vertices(c5_fractional_stable_polytope()))
    frac = tuple([F(1, 2)] * 5)
    assert frac in verts
    integral = {v for v in verts if all(x in (0, 1) for x in v)}
    # empty set, 5 singletons, 5 non-adjacent pairs
    assert len(integral) == 11
    assert verts == integral | {frac}


def test_vertices_nonneg_system_matches_generic():
    rows = [((1, 1, 0), 1), ((0, 1, 1), 1), ((1, 0, 1), 1)]
    dim = 3
    fast = exact.vertices_nonneg_system(rows, dim)
    generic_rows = [tuple(-F(int(i == j)) for i in range(dim)) for j in range(dim)]
    p = exact.Polytope.from_rows(dim, [(r, F(0)) for r in generic_rows]
                                 + [(tuple(F(c) for c in coeffs), F(b)) for coeffs, b in rows])
    assert fast == exact.vertices(p)


def test_vertices_dimension_limit():
    p = exact.Polytope.from_rows(2, [((1, 0), 1)])
    with pytest.raises(exact.DimensionLimitExceeded):
        exact.vertices(p, dimension_limit=1)


def test_in_hull_cross():
    gens = [(F(1), F(0)), (F(-1), F(0)), (F(0), F(1)), (F(0), F(-1))]
    assert exact.in_hull((F(0), F(0)), gens)
    assert not exact.in_hull((F(1), F(1)), gens)
    assert exact.in_hull((F(1, 2), F(1, 2)), gens)
    with pytest.raises(InputError):
        exact.in_hull((F(0),), gens)


def test_half_half_not_in_c5_stable_indicators():
    # stable sets of the 5-cycle as indicator vectors
    gens = []
    for s in range(1 << 5):
        members = [i for i in range(5) if s >> i & 1]
        if all((b - a) % 5 not in (1, 4) for a in members for b in members if a != b):
            gens.append(tuple(F(int(i in members)) for i in range(5)))
    assert not exact.in_hull(tuple([F(1, 2)] * 5), gens)


def test_lp_agrees_with_vertex_maximum():
    rng = random.Random(3)
    p = c5_fractional_stable_polytope()
    verts = exact.vertices(p)
    for _ in range(20):
        obj = [F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(5)]
        value, point = exact.lp_maximize(obj, p)
        assert value == brute_lp_over_vertices(obj, verts)
        assert p.contains(point)


def test_vertices_are_extreme_and_feasible():
    """Every reported vertex is feasible and outside the hull of the others."""
    polys = [square_polytope(), c5_fractional_stable_polytope()]
    for p in polys:
        verts = exact.vertices(p)
        for v in verts:
            assert p.contains(v)
            others = [w for w in verts if w != v]
            assert not exact.in_hull(v, others)
