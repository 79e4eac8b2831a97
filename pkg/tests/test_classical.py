import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qwbench.algebra import Session
from qwbench.checks import _chevalley, _poisson
from qwbench.classical import NoClassicalLimit, Rescaled, cadd, classical_limit, cmul
from qwbench.coeff import ONE, vpow
from qwbench.lie import RootSystem

A1 = RootSystem("A", 1)


@pytest.fixture(scope="module")
def a1():
    return Session.build(A1, (0,))


@pytest.fixture(scope="module")
def a2():
    return Session.build(RootSystem("A", 2), (0, 1))


def test_chevalley_relations_a2(a2):
    assert _chevalley(a2) == []


def test_ef_limit_is_coroot(a1):
    assert classical_limit(a1.e(0) * a1.f(0) - a1.f(0) * a1.e(0)) == {((0,), (1,), (0,)): 1}
    assert classical_limit(a1.e(0) * a1.f(0)) == {((1,), (0,), (1,)): 1}


def test_no_limit_detected(a1):
    with pytest.raises(NoClassicalLimit):
        classical_limit(a1.e(0) * (vpow(1) - ONE).inverse())


def test_root_vector_weights_at_one(a2):
    # t^s e_b t^-s = v^<s,b> e_b, so the first-order term is the weight pairing
    eps = (vpow(1) - ONE).inverse()
    for k, beta in enumerate(a2.ordering):
        for s in ((1, 0), (0, 1)):
            x = (a2.t(s) * a2.alg.e(k) * a2.t(tuple(-y for y in s)) - a2.alg.e(k)) * eps
            pairing = a2.W.pair_s(s, beta)
            mono = (tuple(int(j == k) for j in range(a2.D)), (0, 0), (0, 0, 0))
            assert classical_limit(x) == ({mono: pairing} if pairing else {})


def test_a1_bracket_with_torus(a1):
    rc = Rescaled(a1)
    et = rc.monomial(((1,), (0,), (0,)))
    t = a1.t((1,))
    # t e~ = v^2 e~ t, so {e~, t} = (1/8) * (1 - v^2)/(v - 1) at v = 1 = -1/4
    assert rc.bracket(et, t) == {((1,), (1,), (0,)): Fraction(-1, 4)}
    assert rc.bracket(t, et) == {((1,), (1,), (0,)): Fraction(1, 4)}
    assert rc.bracket(et, et) == {}


def polys(D, l):
    mono = st.tuples(st.tuples(*[st.integers(0, 1)] * D), st.tuples(*[st.integers(-1, 1)] * l),
                     st.tuples(*[st.integers(0, 1)] * D))
    return st.dictionaries(mono, st.integers(1, 3).map(Fraction), min_size=1, max_size=2)


@given(polys(1, 1), polys(1, 1), polys(1, 1))
def test_a1_poisson_axioms(x, y, z):
    S = Session.build(A1, (0,))
    rc = Rescaled(S)
    assert cadd(rc.bracket(x, y), rc.bracket(y, x)) == {}
    jac = {}
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        jac = cadd(jac, rc.bracket(a, rc.bracket(b, c)))
    assert jac == {}
    # Leibniz: {x, yz} = {x, y} z + y {x, z}
    lhs = rc.bracket(x, cmul(y, z))
    rhs = cadd(cmul(rc.bracket(x, y), z), cmul(y, rc.bracket(x, z)))
    assert lhs == rhs


def test_a2_poisson_sampled(a2):
    assert _poisson(a2, random.Random(0), 20) == (0, 0)


def test_classical_round_trip(a2):
    rc = Rescaled(a2)
    p = {((1, 0, 0), (1, -1), (0, 0, 1)): Fraction(2), ((0, 0, 0), (0, 0), (0, 0, 0)): Fraction(1)}
    assert rc.classical(rc.lift(p)) == p
