import itertools
import random
from fractions import Fraction

import pytest

from combinorm import emulations, families, graphs, norms
from combinorm.errors import InputError, SizeLimitExceeded

F = Fraction


def test_emulation_validation():
    with pytest.raises(InputError):
        emulations.Emulation(((1, 2),), (F(1), F(2)))  # not decreasing in block
    with pytest.raises(InputError):
        emulations.Emulation(((1, 1), (2, 1)), (F(1), F(1)))  # not injective
    with pytest.raises(InputError):
        emulations.Emulation(((1, 0),), ())


def test_emulation_norm_basics():
    single = emulations.Emulation(((1, 3),), (F(3), F(2), F(1)))
    assert emulations.emulation_norm(single, {1}) == 1

    two = emulations.Emulation(((1, 2), (2, 2)), (F(2), F(1), F(4), F(3)))
    assert emulations.emulation_norm(two, {1, 2}) == 2

    with pytest.raises(InputError):
        emulations.emulation_norm(single, {9})


def test_base_emulations_verify():
    le1 = families.bounded_card_family(range(1, 7), 1)
    fin = families.all_subsets_family(range(1, 7))
    ok, _ = emulations.verify_emulation(emulations.base_singletons(6), le1, 6)
    assert ok
    ok, _ = emulations.verify_emulation(emulations.base_all_finite(6), fin, 6)
    assert ok
    bad, ce = emulations.verify_emulation(emulations.base_all_finite(6), le1, 6)
    assert not bad
    assert ce == frozenset({1, 2})


def test_full_transversal_equals_norm_check():
    rng = random.Random(67)
    for _ in range(30):
        blocks = []
        theta = []
        pool = rng.sample(range(-60, 60), 14)
        i = 0
        label = 1
        while i < len(pool) and label <= 5:
            s = rng.randint(1, 3)
            run = sorted(pool[i:i + s], reverse=True)
            if not run:
                break
            blocks.append((label, len(run)))
            theta.extend(F(v) for v in run)
            i += s
            label += 1
        e = emulations.Emulation(tuple(blocks), tuple(theta))
        labels = e.labels
        for r in range(1, len(labels) + 1):
            for combo in itertools.combinations(labels, r):
                assert emulations.full_transversal(e, combo) == (
                    emulations.emulation_norm(e, combo) == len(combo))


def test_schreier_transform_block_sizes():
    base = emulations.base_singletons(6)
    s1 = emulations.schreier_transform(base)
    assert [s for _, s in s1.blocks] == [1, 2, 3, 4, 5, 6]  # |J_n| = n
    s2 = emulations.schreier_transform(s1)
    assert [s for _, s in s2.blocks] == [n * n for n in range(1, 7)]  # n * |I_n|


def test_schreier_transform_emulates_s1_and_s2():
    base = emulations.base_singletons(8)
    s1_em = emulations.schreier_transform(base)
    s1 = families.schreier(1, truncation=8)
    ok, ce = emulations.verify_emulation(s1_em, s1, 8)
    assert ok, ce

    s2_em = emulations.schreier_transform(emulations.schreier_transform(
        emulations.base_singletons(7)))
    s2 = families.schreier(2, truncation=7)
    ok, ce = emulations.verify_emulation(s2_em, s2, 7)
    assert ok, ce


def test_transform_rejects_unordered_blocks():
    e = emulations.Emulation(((2, 1), (1, 1)), (F(1), F(2)))
    with pytest.raises(InputError):
        emulations.schreier_transform(e)


def test_dstar_of_singleton_bases_is_s1():
    parts = [emulations.base_singletons(8) for _ in range(8)]
    d = emulations.dstar_transform(parts)
    s1 = families.schreier(1, truncation=8)
    ok, ce = emulations.verify_emulation(d, s1, 8)
    assert ok, ce


def test_dstar_single_part_matches_m1_blocks():
    # with one part only the first output block exists: one copy of block 1
    part = emulations.base_singletons(4)
    d = emulations.dstar_transform([part])
    assert d.blocks == ((1, 1),)


def test_dstar_star_omega():
    parts = []
    for k in range(1, 7):
        e = emulations.base_singletons(6)
        for _ in range(k):
            e = emulations.schreier_transform(e)
        parts.append(e)
    d = emulations.dstar_transform(parts)
    s_star_omega = families.schreier("omega", "star", truncation=6)
    ok, ce = emulations.verify_emulation(d, s_star_omega, 5)
    assert ok, ce


def test_union_and_farah_shifts():
    le1a = families.bounded_card_family({1, 2}, 1)
    le1b = families.bounded_card_family({3, 4}, 1)
    ea = emulations.base_singletons(2)
    eb = emulations.Emulation(((3, 1), (4, 1)), (F(-1), F(-2)))
    union_fam = families.union_family([({1, 2}, le1a), ({3, 4}, le1b)])
    farah_fam = families.farah([({1, 2}, le1a), ({3, 4}, le1b)])
    ok, ce = emulations.verify_emulation(emulations.union_shift([ea, eb]), union_fam, 4)
    assert ok, ce
    ok, ce = emulations.verify_emulation(emulations.farah_shift([ea, eb]), farah_fam, 4)
    assert ok, ce
    single = emulations.union_shift([ea])
    ok, _ = emulations.verify_emulation(single, le1a, 2)
    assert ok


def test_isometric_equivalence_on_rational_vectors():
    """Weighted emulation norm equals the family norm on coefficients."""
    rng = random.Random(71)
    s1 = families.schreier(1, truncation=6)
    em = emulations.schreier_transform(emulations.base_singletons(6))
    ctx = norms.context(s1)
    for _ in range(25):
        coeffs = {t: F(rng.randint(-6, 6), rng.randint(1, 4)) for t in range(1, 7)
                  if rng.random() < 0.8}
        want = norms.norm(ctx, coeffs)
        got = emulations.emulation_weighted_norm(em, coeffs)
        assert got == want, coeffs


def test_search_emulation_small_families():
    le1 = families.bounded_card_family(range(1, 4), 1)
    found = emulations.search_emulation(le1, max_block=2)
    assert found is not None
    ok, _ = emulations.verify_emulation(found, le1, 3)
    assert ok

    p3 = graphs.cliques(graphs.path_graph(3))
    found = emulations.search_emulation(p3, max_block=2)
    assert found is not None
    ok, _ = emulations.verify_emulation(found, p3, 3)
    assert ok


def test_search_emulation_limits():
    with pytest.raises(SizeLimitExceeded):
        emulations.search_emulation(families.bounded_card_family(range(1, 8), 1))
    with pytest.raises(SizeLimitExceeded):
        emulations.search_emulation(families.bounded_card_family(range(1, 3), 1),
                                    max_block=4)
