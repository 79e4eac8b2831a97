import pytest
import sympy

from qwbench.algebra import Session
from qwbench.coeff import ONE, qint, vpow
from qwbench.hopf import HopfStructure
from qwbench.lie import RootSystem
from qwbench.modules import (Mat, UnsupportedModule, finite_module, render_matrix, tensor_module,
                             verma_module)
from qwbench.rmatrix import (ad_orbit_probe, check_quasitriangular, check_ybe, comult_identity,
                             designated_entry, l_operator, l_square, r_matrix)

from conftest import to_sympy
from oracles import V as v, a1_spin_rep

A1 = RootSystem("A", 1)
A2 = RootSystem("A", 2)


@pytest.fixture(scope="module")
def a1():
    return Session.build(A1, (0,))


@pytest.fixture(scope="module")
def a2():
    return Session.build(A2, (0, 1))


def to_matrix(m):
    return sympy.Matrix(m.n, m.n, lambda i, j: to_sympy(m.m[(i, j)]) if (i, j) in m.m else 0)


def test_a1_two_dim_matches_sympy(a1):
    V = finite_module(a1, "spin1", "standard")
    (E,), (F,), torus = a1_spin_rep(1, a1.d)
    assert to_matrix(V.E[0]) == E and to_matrix(V.F[0]) == F
    assert to_matrix(V.torus((1,))) == torus((1,))
    q = a1.sub(0).value
    lhs = V.E[0] * V.F[0] - V.F[0] * V.E[0]
    assert lhs == (V.K(0) - V.K(0, -1)).scale((q - q.inverse()).inverse())


def test_trivial_and_vector(a2):
    T = finite_module(a2, "trivial")
    assert T.dim == 1 and not T.E[0] and not T.F[1] and T.torus((3, -2)) == Mat.identity(1)
    V = finite_module(a2, "vector")
    assert V.dim == 3 and V.weights == [(1, 0), (-1, 1), (0, -1)]
    with pytest.raises(UnsupportedModule):
        finite_module(a2, "spin1")


@pytest.mark.parametrize("case", ["trivial", "spin1", "spin2", "spin3", "spin4"])
@pytest.mark.parametrize("flavor", ["standard", "twisted"])
def test_a1_modules(a1, case, flavor):
    V = finite_module(a1, case, flavor)
    assert V.relations_hold()
    assert V.endomorphism_dimension() == 1
    assert V.homomorphism_defects(samples=3) == []


@pytest.mark.parametrize("case", ["vector", "dual"])
@pytest.mark.parametrize("flavor", ["standard", "twisted"])
def test_a2_modules(a2, case, flavor):
    V = finite_module(a2, case, flavor)
    assert V.relations_hold()
    assert V.endomorphism_dimension() == 1
    assert V.homomorphism_defects(samples=3) == []


def test_verma_a1_pattern(a1):
    lam = 5
    M = verma_module(a1, (lam,), 3, flavor="standard")
    sub = a1.sub(0)
    for k in range(1, 4):
        assert M.E[0].m[(k - 1, k)] == qint(k, sub) * qint(lam - k + 1, sub)
    assert M.relations_hold()
    assert verma_module(a1, (lam,), 3).relations_hold()


def test_verma_depths(a1, a2):
    M0 = verma_module(a1, (2,), 0)
    assert M0.dim == 1 and not M0.E[0]
    # heights (1, 2, 1): 1, f1, f2, f3, f1^2, f1 f3, f3^2
    M = verma_module(a2, (1, 1), 2)
    assert M.dim == 7
    assert M.relations_hold()
    with pytest.raises(ValueError):
        verma_module(a1, (1,), -1)


def test_verma_symbolic_weight(a1):
    M = verma_module(a1, (vpow(3) + ONE,), 2)
    assert M.relations_hold()


def test_a1_r_matrix_closed_form(a1):
    V = finite_module(a1, "spin1", "standard")
    R = r_matrix(V, V)
    q = v ** (2 * a1.d)
    (E,), (F,), _ = a1_spin_rep(1, a1.d)
    h = v ** a1.d  # q^(1/2)
    cartan = sympy.diag(h, 1 / h, 1 / h, h)
    want = cartan * (sympy.eye(4) + (q - 1 / q) * sympy.kronecker_product(E, F))
    assert (to_matrix(R) - want).applyfunc(sympy.simplify) == sympy.zeros(4)


def test_trivial_r_matrix(a2):
    T = finite_module(a2, "trivial")
    assert r_matrix(T, T) == Mat.identity(1)
    assert check_quasitriangular(T, T)["ok"] and check_ybe(T)["ok"]
    L = l_operator(T)
    assert L.entry(0, 0) == a2.alg.one()


@pytest.mark.parametrize("flavor", ["standard", "twisted"])
def test_quasitriangular_a1(a1, flavor):
    for case in ("spin1", "spin2"):
        V = finite_module(a1, case, flavor)
        assert check_quasitriangular(V, V)["ok"]
        assert check_ybe(V)["ok"]


@pytest.mark.parametrize("flavor", ["standard", "twisted"])
def test_quasitriangular_a2(a2, flavor):
    V = finite_module(a2, "vector", flavor)
    W = finite_module(a2, "dual", flavor)
    assert check_quasitriangular(V, V)["ok"]
    assert check_quasitriangular(V, W)["ok"]
    assert check_ybe(V)["ok"]


def test_descending_order_fails_on_vector_dual(a2):
    V = finite_module(a2, "vector")
    W = finite_module(a2, "dual")
    rep = check_quasitriangular(V, W, order="descending")
    assert not rep["ok"] and rep["failures"]


def test_comult_identity(a2):
    k = a2.pos[(1, 1)]
    for flavor in ("standard", "twisted"):
        V = finite_module(a2, "vector", flavor)
        assert not comult_identity(V, V, k, side="after")
    V = finite_module(a2, "vector")
    W = finite_module(a2, "dual")
    assert comult_identity(V, W, k, side="before")


def test_designated_entry_and_orbit(a1):
    V = finite_module(a1, "spin1")
    x = designated_entry(V)
    assert x == l_square(a1, 0)
    rep = ad_orbit_probe(HopfStructure(a1), x, bound=8)
    assert rep["stabilized"]


def test_tensor_module_relations(a2):
    V = finite_module(a2, "vector")
    VV = tensor_module(V, V)
    assert VV.dim == 9 and VV.relations_hold()
    assert render_matrix(V.E[0])[0][1] != "0"
