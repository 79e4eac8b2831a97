import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from qwbench.lie import RootSystem, UnsupportedRootSystem

CASES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)]
# positive roots, |W|, reduced words of w0: standard tables
EXPECTED = {"A1": (1, 2, 1), "A2": (3, 6, 2), "A3": (6, 24, 16), "B2": (4, 8, 2),
            "B3": (9, 48, 42), "C3": (9, 48, 42), "G2": (6, 12, 2)}


def sympy_reflection(rs, i):
    """s_i(x) = x - 2(x, a_i)/(a_i, a_i) a_i from the Gram matrix, with sympy."""
    n = rs.rank
    gram = sympy.Matrix(rs.form)
    m = sympy.eye(n)
    for j in range(n):
        m[i, j] -= 2 * gram[j, i] / gram[i, i]
    return m


def test_examples():
    a2 = RootSystem("A", 2)
    assert a2.cartan == [[2, -1], [-1, 2]] and a2.D == 3
    a1 = RootSystem("A", 1)
    assert a1.cartan == [[2]] and a1.D == 1
    b2 = RootSystem("B", 2)
    assert b2.D == 4 and b2.d == [2, 1]
    assert b2.form == [[4, -2], [-2, 2]]
    with pytest.raises(UnsupportedRootSystem):
        RootSystem("E", 6)
    with pytest.raises(UnsupportedRootSystem):
        RootSystem("A", 9)


def test_orderings_from_word():
    a2 = RootSystem("A", 2)
    assert a2.ordering_from_word((0, 1, 0)) == [(1, 0), (1, 1), (0, 1)]
    assert a2.ordering_from_word((1, 0, 1)) == [(0, 1), (1, 1), (1, 0)]
    assert RootSystem("A", 1).ordering_from_word((0,)) == [(1,)]
    with pytest.raises(ValueError):
        a2.ordering_from_word((0, 0, 1))


def test_delta_and_length():
    a2 = RootSystem("A", 2)
    w = a2.element((0, 1))
    assert sorted(a2.delta(w)) == [(0, 1), (1, 1)] and w.length() == 2
    e = a2.identity()
    assert a2.delta(e) == [] and e.length() == 0
    assert len(a2.all_reduced_words_w0()) == 2


@pytest.mark.parametrize("kind,rank", CASES)
def test_tables(kind, rank):
    rs = RootSystem(kind, rank)
    D, order, nwords = EXPECTED[rs.label]
    assert rs.D == D
    assert len(rs.elements()) == order
    assert len(rs.all_reduced_words_w0()) == nwords
    n = rs.rank
    for i in range(n):
        assert rs.cartan[i][i] == 2
        for j in range(n):
            assert i == j or rs.cartan[i][j] <= 0
            assert rs.d[i] * rs.cartan[i][j] == rs.d[j] * rs.cartan[j][i]


@pytest.mark.parametrize("kind,rank", [c for c in CASES if c[1] <= 3])
def test_every_w0_word_gives_normal_ordering(kind, rank):
    rs = RootSystem(kind, rank)
    for word in rs.all_reduced_words_w0():
        assert rs.is_normal_ordering(rs.ordering_from_word(word))


def test_non_normal_ordering_rejected():
    a2 = RootSystem("A", 2)
    assert not a2.is_normal_ordering([(1, 0), (0, 1), (1, 1)])


@pytest.mark.parametrize("kind,rank", [("A", 2), ("B", 2), ("G", 2)])
def test_length_equals_delta(kind, rank):
    rs = RootSystem(kind, rank)
    for w in rs.elements():
        assert len(w.word()) == len(rs.delta(w))
        assert rs.is_reduced(w.word())
        assert rs.element(w.word()) == w


@pytest.mark.parametrize("kind,rank", [("A", 3), ("B", 2), ("G", 2)])
def test_reflections_match_sympy(kind, rank):
    rs = RootSystem(kind, rank)
    for i in range(rank):
        m = sympy_reflection(rs, i)
        for b in rs.positive:
            assert tuple(m * sympy.Matrix(b)) == rs.reflect(i, b)


@given(st.sampled_from(CASES), st.data())
def test_weyl_action_preserves_form(case, data):
    rs = RootSystem(*case)
    w = data.draw(st.sampled_from(rs.elements()))
    x = data.draw(st.sampled_from(rs.roots))
    y = data.draw(st.sampled_from(rs.roots))
    assert rs.pair(w.act(x), w.act(y)) == rs.pair(x, y)


def test_words_are_group_equality():
    a2 = RootSystem("A", 2)
    assert a2.element((0, 1, 0)) == a2.element((1, 0, 1))
    assert a2.element((0, 0)) == a2.identity()
    words = {w for k in range(4) for w in itertools.product(range(2), repeat=k)}
    assert len({a2.element(w) for w in words}) == 6
