import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from apollonian.core_forms import coordinate_sum, descartes_form, height_sq, l1_norm, reversed_negation
from apollonian.group import apply_generator, apply_word, rooted_orbit_stream
from apollonian.reduction import (
    InfiniteFamily,
    Kind,
    check_root_conditions,
    classify_reduced,
    count_root_quadruples,
    exceptional_orbit_representatives,
    find_exceptional,
    group_reduced_into_orbits,
    is_reduced,
    level_quadruples,
    make_reduced,
    reduce,
    root_quadruples_nonnegative_min,
    root_quadruples_with_min,
)
from oracles import roots_brute, sorted_level_points, step


def test_reduce_examples():
    tr = reduce((15, 2, 2, 3))
    assert tr.result.quadruple == (-1, 2, 2, 3) and tr.result.kind is Kind.ROOT
    assert len(tr.steps) == 1
    tr = reduce((0, 0, 0, 2))
    assert tr.result.quadruple == (0, 0, 0, 2) and tr.result.kind is Kind.EXCEPTIONAL
    tr = reduce((-1, 2, 2, 3))
    assert tr.steps == () and tr.result.kind is Kind.ROOT
    tr = reduce((0, 0, 2, 4))
    assert tr.result.quadruple in {(0, 0, 0, 2), (-2, 0, 0, 0)}


def test_reduce_rejects_zero():
    with pytest.raises(ValueError):
        reduce((0, 0, 0, 0))


@pytest.mark.parametrize("q, expected", [
    ((-1, 0, 0, 1), True), ((0, 0, 1, 3), False), ((15, 2, 2, 3), False),
    ((0, 0, 0, 2), True), ((-1, 1, 1, 1), True), ((-1, -1, 1, 1), True),
])
def test_is_reduced(q, expected):
    assert is_reduced(tuple(sorted(q))) is expected


@pytest.mark.parametrize("q, kind", [
    ((-1, 1, 1, 1), Kind.ROOT), ((0, 0, 0, 2), Kind.EXCEPTIONAL), ((-1, -1, 1, 1), Kind.EXCEPTIONAL),
    ((0, 1, 1, 2), Kind.ROOT), ((-1, 2, 2, 3), Kind.ROOT),
])
def test_classify(q, kind):
    assert classify_reduced(q) is kind


def test_classify_rejects_unreduced():
    with pytest.raises(ValueError):
        classify_reduced((0, 0, 1, 3))


def test_negative_sum_classified_through_mirror():
    r = make_reduced((-2, 0, 0, 0))
    assert r.kind is Kind.EXCEPTIONAL and r.orientation == -1
    assert r.canonical == (0, 0, 0, 2)
    assert r.mirror().quadruple == (0, 0, 0, 2)


def test_zero_sum_reduced_quadruples_are_exceptional():
    # With sum 0 and d > 0, a + b + c = -d < 0 rules out the root inequality.
    for q in level_quadruples(8, 50) + level_quadruples(4, 50):
        if coordinate_sum(q) == 0 and is_reduced(q):
            assert classify_reduced(q) is Kind.EXCEPTIONAL


def test_level_scan_height_32():
    reduced = {(-1, 0, 0, 1), (0, 0, 0, 2), (-1, 1, 1, 1), (-1, 1, 2, 2), (-1, 1, 3, 3)}
    unreduced = {(0, 0, 1, 3), (0, 0, 2, 4)}
    got = level_quadruples(4, 32)
    assert got == sorted_level_points(4, 32)
    assert set(got) == reduced | unreduced
    assert {q for q in got if is_reduced(q)} == reduced


@pytest.mark.parametrize("k", [4, 8, 12, -4, -8, 0, 3])
def test_level_scan_matches_four_fold_scan(k):
    assert level_quadruples(k, 60) == sorted_level_points(k, 60)


def test_find_exceptional_level_4():
    found = find_exceptional(4)
    assert {r.canonical for r in found} == {(0, 0, 0, 2), (-1, 0, 0, 1)}
    assert find_exceptional(-4) == []
    groups = exceptional_orbit_representatives(4)
    assert sorted(map(tuple, groups)) == [((-2, 0, 0, 0), (0, 0, 0, 2)), ((-1, 0, 0, 1),)]


def test_find_exceptional_level_8():
    assert {r.quadruple for r in find_exceptional(8)} == {(-1, -1, 1, 1), (-1, 0, 1, 2)}


@pytest.mark.parametrize("k", [4, 8, 12, 20, 24])
def test_find_exceptional_matches_exhaustive_ball(k):
    ball = [q for q in sorted_level_points(k, 2 * k * k) if any(q)]
    expected = {q for q in ball if is_reduced(q) and classify_reduced(q) is Kind.EXCEPTIONAL}
    assert {r.quadruple for r in find_exceptional(k)} == expected


def test_exceptional_level_360_neighbourhood():
    # Reduced exceptional quadruple of level 360 with large l1 norm.
    q = (-5, -3, -2, 12)
    assert descartes_form(q) == 360
    assert q in {r.quadruple for r in find_exceptional(360)}
    assert height_sq((-2, -3, -5, 12)) == 182
    assert l1_norm((-2, -3, -5, 12)) == 22
    # Its four neighbours, computed generator by generator.
    base = (-2, -3, -5, 12)
    assert [apply_generator(i, base) for i in (1, 2, 3, 4)] == [
        (10, -3, -5, 12), (-2, 13, -5, 12), (-2, -3, 19, 12), (-2, -3, -5, -32)]
    assert all(l1_norm(apply_generator(i, base)) >= 22 for i in (1, 2, 3, 4))
    # (-2, -3, 9, -4) is a different level altogether.
    assert descartes_form((-2, -3, 9, -4)) == 220
    assert make_reduced((-4, -3, -2, 9)).kind is Kind.EXCEPTIONAL


def test_exceptional_only_for_positive_levels():
    for k in range(-40, 1, 4):
        assert find_exceptional(k) == []


def test_grouping_singleton_and_pairs():
    assert group_reduced_into_orbits([(-1, 0, 0, 1)], 4) == [[(-1, 0, 0, 1)]]
    assert group_reduced_into_orbits([(0, 0, 0, 2), (-2, 0, 0, 0)], 4) == [[(-2, 0, 0, 0), (0, 0, 0, 2)]]
    with pytest.raises(ValueError):
        group_reduced_into_orbits([(0, 1, 1, 2)], 4)


def test_zero_sum_orbit_connects_reduced_pair():
    # (0,0,0,2) -> (0,0,2,0)->... reaches (-2,0,0,0) through (0,0,2,4)-type steps.
    path = apply_word((4,), (0, 0, 2, 4))
    assert path == (0, 0, 2, 0)
    assert apply_generator(4, (0, 0, 4, 6)) == (0, 0, 4, 2)


def test_root_examples():
    assert root_quadruples_with_min(-4, 1) == [(-1, 2, 3, 4)]
    fam = root_quadruples_with_min(4, 1)
    assert isinstance(fam, InfiniteFamily) and fam.member(5) == (-1, 1, 5, 5)
    assert descartes_form(fam.member(7)) == 4
    assert root_quadruples_with_min(4, 2) == [(-2, 3, 5, 6), (-2, 4, 4, 4)]
    assert count_root_quadruples(-4, 5) == 4
    assert count_root_quadruples(4, 30) == 30
    assert count_root_quadruples(-4, 32) == 23
    assert count_root_quadruples(4, 32) == 20
    assert count_root_quadruples(4, 1) == math.inf
    with pytest.raises(ValueError):
        root_quadruples_with_min(-4, 0)


def test_infinite_family_for_every_square_level():
    for l in range(1, 6):
        assert isinstance(root_quadruples_with_min(4 * l * l, l), InfiniteFamily)


@pytest.mark.parametrize("k", [-4, 4, 0, -8, 8, 12, -3, 5 * 4, 3])
def test_roots_match_brute_force(k):
    for n in range(1, 9):
        res = root_quadruples_with_min(k, n)
        if isinstance(res, InfiniteFamily):
            continue
        assert res == roots_brute(k, n)
        for q in res:
            assert descartes_form(q) == k and check_root_conditions(q)
            assert is_reduced(q) and classify_reduced(q) is Kind.ROOT


def test_roots_with_nonnegative_smallest_entry():
    assert root_quadruples_nonnegative_min(-4) == [(0, 1, 1, 2)]
    assert root_quadruples_nonnegative_min(0) == [(0, 0, 1, 1)]
    assert root_quadruples_nonnegative_min(4) == []
    found = root_quadruples_nonnegative_min(-100)
    assert (2, 3, 4, 7) in found
    assert all(descartes_form(q) == -100 for q in found)


def test_quadruple_2_3_4_7_level():
    assert descartes_form((2, 3, 4, 7)) == -100
    assert descartes_form((2, 3, 4, 7)) != -96


def _random_word(rng, max_len=12):
    return [rng.randint(1, 4) for _ in range(rng.randint(0, max_len))]


@pytest.mark.parametrize("base", [(-1, 2, 2, 3), (0, 1, 1, 2), (-1, 1, 1, 1)])
def test_random_words_reduce_back(base):
    rng = random.Random(hash(base) & 0xFFFF)
    sign = coordinate_sum(base) > 0
    for _ in range(300):
        q = apply_word(_random_word(rng), base)
        assert (coordinate_sum(q) > 0) == sign
        tr = reduce(q)
        assert tr.result.quadruple == base
        assert all(i == 4 for i in tr.word)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(0, 0, 0, 2), (-1, 0, 0, 1), (-2, 0, 0, 0)]),
       st.lists(st.integers(1, 4), max_size=10))
def test_exceptional_orbits_reduce_into_their_reduced_set(base, word):
    groups = exceptional_orbit_representatives(4)
    target = next(g for g in groups if tuple(sorted(base)) in g)
    assert reduce(apply_word(word, base)).result.quadruple in target


def test_rooted_stream_examples():
    assert [r.quadruple for r in rooted_orbit_stream((-1, 2, 2, 3), 3)] == [(-1, 2, 2, 3)]
    assert [r.quadruple for r in rooted_orbit_stream((0, 1, 1, 2), 2)] == [(0, 1, 1, 2)]


def test_rooted_stream_matches_visited_bfs():
    from oracles import packing_curvatures_bfs

    seen = set()
    for rec in rooted_orbit_stream((0, 1, 1, 2), 300):
        seen.update(rec.quadruple)
    assert seen == packing_curvatures_bfs((0, 1, 1, 2), 300)


def test_mirror_of_reduced_is_reduced():
    for r in find_exceptional(24):
        assert is_reduced(reversed_negation(r.quadruple))


@pytest.mark.slow
@pytest.mark.parametrize("k", [4, 8, 24, 360])
def test_find_exceptional_matches_solved_ball_scan(k):
    from oracles import exceptional_in_ball

    assert {r.quadruple for r in find_exceptional(k)} == exceptional_in_ball(k, 2 * k * k)
