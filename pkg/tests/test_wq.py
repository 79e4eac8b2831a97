import random
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from qwbench.algebra import Session
from qwbench.coeff import ONE, QV, vpow
from qwbench.hopf import HypothesisError
from qwbench.lie import RootSystem
from qwbench.modules import finite_module, random_element
from qwbench.slices import slice_audit
from qwbench.wq import (IdealContext, KPoly, agreement, build_character, closure_check,
                        coset_basis, relation_exponent, torus_lattice, w_elements, wh_of_module,
                        whittaker_session)

A1 = RootSystem("A", 1)
A2 = RootSystem("A", 2)
B2 = RootSystem("B", 2)


@pytest.fixture(scope="module")
def a1ctx():
    S = Session.build(A1, (0,))
    return IdealContext(S, build_character(S, [1]))


@pytest.fixture(scope="module")
def a2ctx():
    S, rep = whittaker_session(Session.build(A2, (0, 1)))
    assert rep["convention"] == "literal"
    return IdealContext(S, build_character(S, [1, 1]))


def test_kpoly_arithmetic():
    k1, k2 = KPoly.var(2, 0), KPoly.var(2, 1)
    x = (k1 + k2) * (k1 - k2)
    assert x == k1 * k1 - k2 * k2
    assert not (k1 - k1)
    assert (k1 ** 2).scale(QV(3)) == k1 * k1 + k1 * k1 + k1 * k1
    assert KPoly.const(2, 0) == KPoly(2)


def test_character_examples():
    S = Session.build(A1, (0,))
    chi = build_character(S, [1])
    assert chi.certificate == {"ok": True, "relations": []}
    assert chi.tilde_value(0) == ONE
    assert chi.e_value(0) == (ONE - vpow(-16)).inverse()
    with pytest.raises(ValueError):
        build_character(S, [1, 2])


@pytest.mark.parametrize("rs", [A2, B2])
def test_symbolic_certificate_coxeter(rs):
    S = Session.build(rs, (0, 1))
    chi = build_character(S)
    assert chi.symbolic and chi.certificate["ok"]
    assert chi.certificate["relations"]
    for row in chi.certificate["relations"]:
        assert row["chi_lhs"] == "0" and row["chi_rhs"] == "0"


def test_a2_coxeter_pair_exponent():
    S = Session.build(A2, (0, 1))
    a, b = S.pos[(1, 0)], S.pos[(0, 1)]
    # (a1, a2) + c_12 = -1 + 1 = 0
    assert relation_exponent(S, min(a, b), max(a, b)) == 0


def test_augmentation_character():
    for rs in (A2, B2):
        S = Session.build(rs, (0, 1))
        assert build_character(S, [0, 0]).certificate["ok"]


def test_hypothesis_required():
    S = Session.build(A1, (0,))
    S.R = replace(S.R, simple_flag=False)
    with pytest.raises(HypothesisError):
        build_character(S)


def test_reduction_examples(a1ctx):
    ctx = a1ctx
    R = ctx.ralg
    for g in ctx.generators():
        assert not ctx.reduce(g)
    assert ctx.reduce(R.one()) == R.one()
    et = R.e(0) * ctx.chi.scale(0)
    # f e~ is already in f t e order; e~ f picks up (1 - q^-2)[K] = q^-1 (K - K^-1)
    assert ctx.reduce(R.f(0) * et) == R.f(0)
    want = R.f(0) + (R.torus((8,)) - R.torus((-8,))) * vpow(-8)
    assert ctx.reduce(et * R.f(0)) == want


@pytest.mark.parametrize("name", ["a1ctx", "a2ctx"])
@given(seed=st.integers(0, 10**6))
def test_reduce_idempotent_and_kills_ideal(request, name, seed):
    ctx = request.getfixturevalue(name)
    rng = random.Random(seed)
    x = ctx.ralg.convert(random_element(ctx.alg, rng, degree=2, terms=2))
    y = ctx.reduce(x)
    assert ctx.reduce(y) == y
    for g in ctx.generators():
        assert not ctx.reduce(x * g)


def test_whittaker_examples(a1ctx, a2ctx):
    for ctx in (a1ctx, a2ctx):
        one = ctx.ralg.one()
        assert ctx.whittaker_test(one) and ctx.ad_invariance_test(one)
        k = ctx.chi.mplus[0] if ctx.chi.segment == "initial" else ctx.chi.mplus[-1]
        g = ctx.S.pos[tuple(ctx.S.R.gammas[0])]
        eg = ctx.ralg.e(g) * ctx.chi.scale(g)
        assert ctx.whittaker_test(eg) and ctx.ad_invariance_test(eg)
        assert k in ctx.chi.mplus
    f = a1ctx.ralg.f(0)
    assert a1ctx.whittaker_test(f) == a1ctx.ad_invariance_test(f)


def test_a1_invariants_and_growth(a1ctx):
    w0 = w_elements(a1ctx, 0)
    assert w0["dimension"] == 1 and w0["invariants"][0] == a1ctx.ralg.one()
    # truncations of a polynomial ring in one variable: dim sZN_s = 1
    dims = [w_elements(a1ctx, deg, box=max(1, 2 * deg))["dimension"] for deg in range(4)]
    assert dims == [1, 2, 3, 4]
    audit = slice_audit(a1ctx.S.R)
    assert audit["dims"]["Z"] + audit["dims"]["N_s"] == 1
    w1 = w_elements(a1ctx, 1)
    assert w1["dimension"] == 2 and max(w1["degrees"]) == 1
    assert closure_check(a1ctx, w1["invariants"])["failures"] == []


def test_a1_agreement(a1ctx):
    rep = agreement(a1ctx, 3, samples=10)
    assert rep["disagreements"] == 0 and rep["invariant_cases"] > 0


def test_a2_coxeter_agreement(a2ctx):
    rep = agreement(a2ctx, 1, samples=6)
    assert rep["disagreements"] == 0
    w = w_elements(a2ctx, 1)
    assert w["dimension"] == 3 and sorted(w["degrees"]) == [0, 1, 1]


def test_torus_lattice_and_cosets(a1ctx):
    assert torus_lattice(a1ctx.S) == [(4,)]
    basis = coset_basis(a1ctx, 1, box=1)
    assert len(basis) == 3 * 2
    for _, x in basis:
        assert a1ctx.is_reduced(x)


def test_wh_of_module(a1ctx):
    S = a1ctx.S
    T = finite_module(S, "trivial")
    assert len(wh_of_module(T, build_character(S, [0]))) == 1
    V = finite_module(S, "spin1")
    assert wh_of_module(V, build_character(S, [1])) == []
    assert len(wh_of_module(V, build_character(S, [0]))) == 1


def test_convention_selection_a2_reflection():
    S = Session.build(A2, (0, 1, 0))
    _, lit = whittaker_session(S, "literal")
    assert lit["literal"] == {"certificate": True, "coideal": False}
    W, rep = whittaker_session(S)
    assert rep["convention"] == "mirrored"
    assert rep["mirrored"] == {"certificate": True, "coideal": True}
    chi = build_character(W, [1])
    assert chi.segment == "final"
    ctx = IdealContext(W, chi)
    assert agreement(ctx, 1, samples=4)["disagreements"] == 0


def test_literal_convention_disagrees_without_coideal():
    # without the coideal property the two tests are not equivalent
    S = Session.build(A2, (0, 1, 0))
    ctx = IdealContext(S, build_character(S, [1]))
    assert agreement(ctx, 1, samples=4)["disagreements"] > 0


def test_mirrored_breaks_coxeter_certificate():
    S = Session.build(A2, (0, 1))
    M, rep = whittaker_session(S, "mirrored")
    assert rep["mirrored"]["certificate"] is False
    with pytest.raises(ValueError):
        whittaker_session(S, "sideways")
