"""
R-matrices as operators on tensor products of weight modules.

The universal element is never formed.  On V (x) W it is

    R = q^{(mu,nu) + (mu, C nu)} * prod_beta exp_{q_beta}[(1 - q_beta^-2) e_beta (x) t^{C beta} f_beta]

(standard flavor: C = 0 and X_beta^+- in place of e_beta, t^{C beta} f_beta), where
mu, nu are the weights of the two factors and C is the Cayley operator.  Every
q-exponential is a finite sum because root vectors act nilpotently.

order="ascending" puts the factor of an earlier root to the left.  With the
braid action and coproduct used here this is the order that makes the
operator quasitriangular; order="descending" (later roots to the left) is
kept for comparison and fails on mixed products such as A2 vector (x) dual.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import ONE, qfactorial, render, vpow
from .modules import Mat, ZERO, flip, tensor_module
from .realization import RealizationError, fundamental_weights


class NonIntegralPairing(RealizationError):
    pass


# -- weights --------------------------------------------------------------------------
def weight_root_coords(rs, dyn):
    """Dynkin labels -> simple-root coordinates (Fractions)."""
    om = fundamental_weights(rs)
    out = [Fraction(0)] * rs.rank
    for i, m in enumerate(dyn):
        if m:
            for k in range(rs.rank):
                out[k] += m * om[i][k]
    return out


def _v_exponent(session, x):
    y = Fraction(x) * 2 * session.d
    if y.denominator != 1:
        raise NonIntegralPairing(f"pairing {x} is not a multiple of 1/2d with d={session.d}")
    return int(y)


def cartan_exponent(session, mu, nu, flavor="twisted"):
    """v-exponent of the Cartan factor on weights mu (x) nu (Dynkin labels)."""
    rs = session.rs
    a = weight_root_coords(rs, mu)
    b = weight_root_coords(rs, nu)
    val = rs.pair(a, b)
    if flavor == "twisted":
        val += rs.pair(a, session.R.cayley_apply(b))
    return _v_exponent(session, val)


# -- q-exponentials ----------------------------------------------------------------------
def q_exp(x, qb, sub, n):
    """exp_{q_beta}(x) = sum q_beta^{k(k+1)/2} x^k/[k]! truncated by nilpotency."""
    out = Mat.identity(n)
    p = Mat.identity(n)
    k = 0
    while True:
        k += 1
        p = p * x
        if not p:
            return out
        if k > n:
            raise ArithmeticError("q-exponential argument is not nilpotent")
        coef = qb ** (k * (k + 1) // 2) * qfactorial(k, sub).inverse()
        out = out + p.scale(coef)


def _root_data(session, k):
    beta = session.ordering[k]
    qb = session.q_beta(beta)
    sub = _sub_for(session, beta)
    return beta, qb, sub


def _sub_for(session, beta):
    from .coeff import SubscriptedQ
    return SubscriptedQ(session.rs.root_length_index(beta), session.d)


def _root_factor(session, V, W, k):
    """(1 - q_b^-2) e_b (x) t^{C b} f_b on V (x) W."""
    beta, qb, sub = _root_data(session, k)
    D = session.D
    eb = V.letter(k)
    fb = W.letter(D + k)
    if V.flavor == "twisted":
        fb = W.torus(session.R.cayley_exponent(beta)) * fb
    x = eb.kron(fb).scale(ONE - qb ** -2)
    return x, qb, sub


def order_positions(session, order):
    D = session.D
    return list(reversed(range(D))) if order == "descending" else list(range(D))


def r_matrix(V, W, order="ascending"):
    """The R-operator on V (x) W for the flavor shared by V and W."""
    S = V.S
    n = V.dim * W.dim
    diag = []
    for mu in V.weights:
        for nu in W.weights:
            diag.append(vpow(cartan_exponent(S, mu, nu, V.flavor)))
    out = Mat.diag(diag)
    for k in order_positions(S, order):
        x, qb, sub = _root_factor(S, V, W, k)
        out = out * q_exp(x, qb, sub, n)
    return out


def r_tilde(V, W, positions):
    """prod over the given positions (left to right) of the q-exponential factors."""
    S = V.S
    n = V.dim * W.dim
    out = Mat.identity(n)
    for k in positions:
        x, qb, sub = _root_factor(S, V, W, k)
        out = out * q_exp(x, qb, sub, n)
    return out


# -- checks ------------------------------------------------------------------------------
def _generators(V):
    S = V.S
    alg = V.alg
    gens = []
    for i in range(S.l):
        k = S.simple_pos[i]
        gens.append((f"e{i + 1}", alg.e(k)))
        gens.append((f"f{i + 1}", alg.f(k)))
        s = [0] * S.l
        s[i] = 1
        gens.append((f"t{i + 1}", alg.torus(tuple(s))))
    return gens


def check_quasitriangular(V, W, order="ascending", R=None):
    """R Delta(a) = Delta^opp(a) R for every generator a; report with witnesses."""
    R = R if R is not None else r_matrix(V, W, order)
    VW = tensor_module(V, W)
    WV = tensor_module(W, V)
    P = flip(V.dim, W.dim)       # V (x) W -> W (x) V
    Pinv = flip(W.dim, V.dim)
    failures = {}
    for name, g in _generators(V):
        lhs = R * VW.act(g)
        rhs = Pinv * WV.act(g) * P * R
        d = lhs - rhs
        if d:
            failures[name] = d.witness()
    return {"ok": not failures, "order": order, "failures": _render_failures(failures)}


def check_ybe(V, order="ascending"):
    """R12 R13 R23 = R23 R13 R12 on V (x) V (x) V."""
    n = V.dim
    R = r_matrix(V, V, order)
    one = Mat.identity(n)
    R12 = R.kron(one)
    R23 = one.kron(R)
    P23 = one.kron(flip(n, n))
    R13 = P23 * R12 * P23
    d = R12 * R13 * R23 - R23 * R13 * R12
    return {"ok": not d, "order": order, "failures": _render_failures({"ybe": d.witness()} if d else {})}


def _render_failures(f):
    return {k: [list(w[0]), render(w[1])] for k, w in f.items()}


def comult_identity(V, W, k, side="after"):
    """
    Delta(e_beta_k) against R~^{-1} (e_beta (x) T + 1 (x) e_beta) R~, with
    R~ built from the roots after beta_k (side="after", the variant compatible
    with the ascending R-matrix order) or before it (side="before").  T is
    t^{beta} in the standard flavor and t^{(1+C) beta} in the twisted one,
    matching Delta on simple roots.
    Returns the defect operator.
    """
    S = V.S
    R = S.R
    beta = S.ordering[k]
    if side == "before":
        pos = list(reversed(range(k)))
    else:
        pos = list(range(S.D - 1, k, -1))
    Rt = r_tilde(V, W, pos)
    if V.flavor == "twisted":
        T = R.torus_exponent([x + y for x, y in zip(beta, R.cayley_apply(beta))])
    else:
        T = R.coroot_exponent(beta)
    eb_v, eb_w = V.letter(k), W.letter(k)
    mid = eb_v.kron(W.torus(T)) + Mat.identity(V.dim).kron(eb_w)
    rhs = Rt.inverse() * mid * Rt
    lhs = tensor_module(V, W).letter(k)
    return lhs - rhs


# -- L-operators ----------------------------------------------------------------------------
class AlgMatrix:
    """A matrix with algebra-element entries, {(a, b): Element}."""

    def __init__(self, alg, n, m=None):
        self.alg = alg
        self.n = n
        self.m = m or {}

    @classmethod
    def identity(cls, alg, n):
        return cls(alg, n, {(i, i): alg.one() for i in range(n)})

    def __mul__(self, other):
        out = {}
        for (a, c), x in self.m.items():
            for b in range(other.n):
                y = other.m.get((c, b))
                if y is None:
                    continue
                z = x * y
                if (a, b) in out:
                    z = out[(a, b)] + z
                if z:
                    out[(a, b)] = z
                else:
                    out.pop((a, b), None)
        return AlgMatrix(self.alg, self.n, out)

    def __add__(self, other):
        out = dict(self.m)
        for k, x in other.m.items():
            y = out[k] + x if k in out else x
            if y:
                out[k] = y
            else:
                out.pop(k, None)
        return AlgMatrix(self.alg, self.n, out)

    def entry(self, a, b):
        return self.m.get((a, b), self.alg.element())


def _cartan_element(V, nu, second=True):
    """
    The algebra factor of the Cartan part when the other slot has weight nu:
    t^{nu + C nu} (second=True, for R) or t^{nu + C* nu} (for R_21).
    """
    S = V.S
    R = S.R
    rs = S.rs
    b = weight_root_coords(rs, nu)
    if V.flavor != "twisted":
        return V.alg.torus(R.torus_exponent(b))
    if second:
        cb = R.cayley_apply(b)
    else:
        # adjoint of C for the invariant form
        om = fundamental_weights(rs)
        cb = [Fraction(0)] * rs.rank
        for i in range(rs.rank):
            coef = rs.pair(R.cayley_apply(rs.simple[i]), b) / rs.d[i]
            for k in range(rs.rank):
                cb[k] += coef * om[i][k]
    return V.alg.torus(R.torus_exponent([x + y for x, y in zip(b, cb)]))


def l_minus(V, order="ascending"):
    """(id (x) pi_V) R as a matrix of algebra elements."""
    S = V.S
    alg = V.alg
    n = V.dim
    out = AlgMatrix(alg, n, {(a, a): _cartan_element(V, V.weights[a]) for a in range(n)})
    D = S.D
    for k in order_positions(S, order):
        beta, qb, sub = _root_data(S, k)
        eb = alg.e(k)
        M = V.letter(D + k)
        if V.flavor == "twisted":
            M = V.torus(S.R.cayley_exponent(beta)) * M
        out = out * _exp_series(alg, n, eb, M, qb, sub)
    return out


def r21_image(V, order="ascending"):
    """(id (x) pi_V) R_21 as a matrix of algebra elements."""
    S = V.S
    alg = V.alg
    n = V.dim
    out = AlgMatrix(alg, n, {(a, a): _cartan_element(V, V.weights[a], second=False)
                             for a in range(n)})
    for k in order_positions(S, order):
        beta, qb, sub = _root_data(S, k)
        fb = alg.f(k)
        if V.flavor == "twisted":
            fb = alg.torus(S.R.cayley_exponent(beta)) * fb
        M = V.letter(k)
        out = out * _exp_series(alg, n, fb, M, qb, sub)
    return out


def _exp_series(alg, n, x, M, qb, sub):
    """sum_k q_b^{k(k+1)/2} (1-q_b^-2)^k/[k]! x^k (x) M^k, with x an Element."""
    out = AlgMatrix.identity(alg, n)
    p = Mat.identity(n)
    xk = alg.one()
    k = 0
    while True:
        k += 1
        p = p * M
        if not p:
            return out
        xk = xk * x
        coef = qb ** (k * (k + 1) // 2) * (ONE - qb ** -2) ** k * qfactorial(k, sub).inverse()
        term = {}
        for key, c in p.m.items():
            term[key] = xk * (c * coef)
        out = out + AlgMatrix(alg, n, term)


def l_operator(V, order="ascending"):
    """L^V = (id (x) pi_V)(R R_21)."""
    return l_minus(V, order) * r21_image(V, order)


def designated_entry(V, L=None, order="ascending"):
    """The highest-weight diagonal matrix element of L^V (v* normalized by v*(v) = 1)."""
    L = L if L is not None else l_operator(V, order)
    top = 0
    return L.entry(top, top)


def l_square(session, i, alg=None):
    """The t-monomial for L_i^2 = e^{2h Y_i}."""
    rs = session.rs
    om = fundamental_weights(rs)[i]
    return (alg or session.alg).torus(session.R.torus_exponent([2 * x for x in om]))


# -- Ad-orbit probe -----------------------------------------------------------------------
def ad_orbit_probe(hopf, x, bound=8, max_steps=200):
    """
    Span of Ad U(x) grown by the generators e_i, f_i, t_i^{+-1}.  Stabilized
    means the span is closed under all generators (a finite-dimensional
    certificate); exceeding the PBW degree bound is reported as inconclusive.
    """
    from .linalg import Echelon
    S = hopf.S
    alg = hopf.alg
    gens = []
    for i in range(S.l):
        k = S.simple_pos[i]
        gens.append(alg.e(k))
        gens.append(alg.f(k))
        for p in (1, -1):
            s = [0] * S.l
            s[i] = p
            gens.append(alg.torus(tuple(s)))
    ech = Echelon()
    basis = []
    queue = []
    if ech.add(dict(x.terms)):
        basis.append(x)
        queue.append(x)
    steps = 0
    while queue:
        y = queue.pop(0)
        for g in gens:
            z = hopf.adjoint(g, y)
            if z.degree() > bound:
                return {"stabilized": False, "dimension": len(basis), "reason": "degree bound exceeded",
                        "bound": bound}
            if ech.add(dict(z.terms)):
                basis.append(z)
                queue.append(z)
        steps += 1
        if steps > max_steps:
            return {"stabilized": False, "dimension": len(basis), "reason": "step limit",
                    "bound": bound}
    return {"stabilized": True, "dimension": len(basis), "bound": bound,
            "max_degree": max(b.degree() for b in basis)}


def r_matrix_grid(R):
    """Canonical text grid for golden files."""
    return [[render(R.m.get((i, j), ZERO)) for j in range(R.n)] for i in range(R.n)]

