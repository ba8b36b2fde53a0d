import pytest
from hypothesis import given, strategies as st

from apollonian.core_forms import (
    DESCARTES_MATRIX,
    ParityError,
    as_quadruple,
    descartes_form,
    from_lorentz,
    height_sq,
    is_descartes_level,
    l1_norm,
    lorentz_form,
    reversed_negation,
    to_lorentz,
)
from oracles import qd_matrix

ints = st.integers(-10**6, 10**6)
quads = st.tuples(ints, ints, ints, ints)
even_quads = quads.filter(lambda q: sum(q) % 2 == 0)


@pytest.mark.parametrize("q, k", [
    ((0, 1, 1, 2), -4),
    ((-1, 2, 2, 3), 0),
    ((-1, 1, 1, 1), 4),
    ((0, 0, 0, 2), 4),
    ((2, 3, 4, 7), -100),
])
def test_descartes_values(q, k):
    assert descartes_form(q) == k


def test_lorentz_values():
    assert lorentz_form((1, 0, 0, 0)) == -1
    assert lorentz_form((0, 1, 1, 1)) == 3


def test_half_sum_map_examples():
    assert to_lorentz((0, 1, 1, 2)) == (2, -1, -1, 0)
    assert lorentz_form(to_lorentz((0, 1, 1, 2))) == -2


def test_odd_sum_rejected():
    with pytest.raises(ParityError):
        to_lorentz((0, 0, 0, 1))
    with pytest.raises(ValueError):
        from_lorentz((1, 0, 0, 0))


@given(quads)
def test_matrix_agrees_with_closed_form(q):
    assert descartes_form(q) == qd_matrix(q)
    assert descartes_form(q) == sum(
        q[i] * DESCARTES_MATRIX[i][j] * q[j] for i in range(4) for j in range(4))


@given(even_quads)
def test_half_sum_map_identities(q):
    w = to_lorentz(q)
    assert 2 * lorentz_form(w) == descartes_form(q)
    assert height_sq(w) == height_sq(q)
    assert from_lorentz(w) == q


@given(quads)
def test_levels_are_zero_or_one_mod_four(q):
    assert descartes_form(q) % 4 == (0 if sum(q) % 2 == 0 else 1)
    assert is_descartes_level(descartes_form(q))


def test_three_mod_four_never_occurs():
    # (0,0,0,1) has level 1; no quadruple reaches 3 (mod 4).
    assert descartes_form((0, 0, 0, 1)) == 1
    assert not is_descartes_level(3) and not is_descartes_level(-1)
    assert is_descartes_level(-3) and is_descartes_level(-4)


@given(quads)
def test_reversed_negation_keeps_level(q):
    assert descartes_form(reversed_negation(q)) == descartes_form(q)
    assert l1_norm(reversed_negation(q)) == l1_norm(q)


def test_as_quadruple():
    assert as_quadruple("1234") == (1, 2, 3, 4)
    with pytest.raises(ValueError):
        as_quadruple([1, 2, 3])


def test_huge_entries_do_not_overflow():
    big = 10**40
    assert descartes_form((big, big, big, big)) == 2 * 4 * big * big - 16 * big * big
