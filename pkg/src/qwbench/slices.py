"""
Group-level checks for the slice sZN_s in SL_n (type A_{n-1}, n <= 4).

Roots of A_{n-1} in simple-root coordinates are runs of ones from i to
j-1, matching eps_i - eps_j and the matrix unit E_ij.  Everything is exact
over Q via python-flint.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as _gcd

from flint import fmpq, fmpq_mat

from .hopf import HypothesisError


class GroupElement:
    """A rational matrix of determinant 1."""

    __slots__ = ("m",)

    def __init__(self, m, check=True):
        self.m = m
        if check and m.det() != 1:
            raise ValueError("determinant is not 1")

    @classmethod
    def identity(cls, n):
        return cls(_eye(n), check=False)

    @property
    def n(self):
        return self.m.nrows()

    def __mul__(self, other):
        return GroupElement(self.m * other.m, check=False)

    def inverse(self):
        return GroupElement(self.m.inv(), check=False)

    def conj(self, x):
        """self x self^-1 for a matrix or group element x."""
        mat = x.m if isinstance(x, GroupElement) else x
        out = self.m * mat * self.m.inv()
        return GroupElement(out, check=False) if isinstance(x, GroupElement) else out

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.m == other.m

    def __hash__(self):
        return hash(tuple(str(x) for x in self.m.entries()))

    def rows(self):
        return [[_frac(self.m[i, j]) for j in range(self.n)] for i in range(self.n)]

    def dump(self):
        return [[str(x) for x in row] for row in self.rows()]


def _eye(n):
    return fmpq_mat(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])


def _q(x):
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


def _frac(x):
    x = fmpq(x)
    return Fraction(int(x.p), int(x.q))


def _unit(n, i, j):
    return fmpq_mat(n, n, [1 if (a, b) == (i, j) else 0 for a in range(n) for b in range(n)])


def root_indices(alpha):
    """(i, j) with alpha = eps_i - eps_j (0-based); alpha may be negative."""
    sign = 1 if max(alpha) > 0 else -1
    a = [sign * x for x in alpha]
    ones = [k for k, x in enumerate(a) if x]
    if not ones or any(x != 1 for x in a if x) or ones != list(range(ones[0], ones[-1] + 1)):
        raise ValueError(f"{alpha} is not a root of type A")
    i, j = ones[0], ones[-1] + 1
    return (i, j) if sign > 0 else (j, i)


def root_vector(n, alpha):
    i, j = root_indices(alpha)
    return _unit(n, i, j)


def root_subgroup_element(n, alpha, t):
    """X_alpha(t) = exp(t E_alpha) = 1 + t E_alpha."""
    return GroupElement(_eye(n) + root_vector(n, alpha) * _q(t), check=False)


def _neg(alpha):
    return tuple(-x for x in alpha)


def weyl_representative(n, gamma, t):
    """s_gamma(t) = X_{-gamma}(t) X_gamma(-1/t) X_{-gamma}(t)."""
    t = Fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    return (root_subgroup_element(n, _neg(gamma), t) * root_subgroup_element(n, gamma, -1 / t)
            * root_subgroup_element(n, _neg(gamma), t))


def diag(values):
    n = len(values)
    return fmpq_mat(n, n, [_q(values[i]) if i == j else 0 for i in range(n) for j in range(n)])


def permutation_of(g):
    """The permutation p with g e_j proportional to e_{p(j)} for a monomial matrix g."""
    n = g.n
    p = []
    for j in range(n):
        nz = [i for i in range(n) if g.m[i, j] != 0]
        if len(nz) != 1:
            raise ValueError("not a monomial matrix")
        p.append(nz[0])
    return tuple(p)


def induces_reflection(n, gamma, rep, sample=None):
    """rep diag(a) rep^-1 = diag(a permuted by the transposition of gamma)."""
    i, j = root_indices(gamma)
    a = sample or [Fraction(k + 2) for k in range(n)]
    b = list(a)
    b[i], b[j] = b[j], b[i]
    return rep.conj(diag(a)) == diag(b)


def u_element(n, gammas, ts):
    """prod exp(t_i X_{-gamma_i}) in the given (segment) order."""
    g = GroupElement.identity(n)
    for gamma, t in zip(gammas, ts):
        g = g * root_subgroup_element(n, _neg(gamma), t)
    return g


def s_representative(n, gammas, ts):
    g = GroupElement.identity(n)
    for gamma, t in zip(gammas, ts):
        g = g * weyl_representative(n, gamma, t)
    return g


# -- Bruhat position -------------------------------------------------------------------
def bruhat_permutation(g):
    """
    The permutation w with g in B w B (B upper triangular), read off from
    ranks of the lower-left submatrices.
    """
    n = g.n
    m = g.m

    def r(i, j):
        if i >= n or j <= 0:
            return 0
        sub = fmpq_mat(n - i, j, [m[a, b] for a in range(i, n) for b in range(j)])
        return sub.rank()

    w = [None] * n
    for i in range(n):
        for j in range(1, n + 1):
            if r(i, j) - r(i + 1, j) - r(i, j - 1) + r(i + 1, j - 1) == 1:
                w[j - 1] = i
    if None in w:
        raise ValueError("rank data is not a permutation")
    return tuple(w)


def _weyl_permutation(rs, w):
    """Permutation of eps-indices induced by a Weyl element of A_{n-1}."""
    n = rs.rank + 1
    out = list(range(n))
    for i in reversed(w.word()):
        out = [x if x not in (i, i + 1) else (i + 1 if x == i else i) for x in out]
    return tuple(out)


def _compose(p, q):
    return tuple(p[q[j]] for j in range(len(q)))


# -- the audit -------------------------------------------------------------------------
def _span_rank(mats):
    if not mats:
        return 0
    n = mats[0].nrows()
    rows = [[m[i, j] for i in range(n) for j in range(n)] for m in mats]
    return fmpq_mat(len(rows), n * n, [x for row in rows for x in row]).rank()


def _in_span(mats, x):
    return _span_rank(mats + [x]) == _span_rank(mats)


def _torus_centralizer(n, rep):
    """Basis of traceless diagonal matrices commuting with rep."""
    hs = [_unit(n, i, i) - _unit(n, i + 1, i + 1) for i in range(n - 1)]
    rows = []
    for h in hs:
        d = rep.conj(h) - h
        rows.append([d[i, j] for i in range(n) for j in range(n)])
    # kernel of the linear map c -> sum c_k (rep h_k rep^-1 - h_k)
    k = len(hs)
    a = fmpq_mat(n * n, k, [rows[c][r] for r in range(n * n) for c in range(k)])
    red, rank = a.rref()
    piv = []
    row = 0
    for c in range(k):
        if row < rank and red[row, c] != 0:
            piv.append(c)
            row += 1
    basis = []
    for free in (c for c in range(k) if c not in piv):
        vec = [fmpq(0)] * k
        vec[free] = fmpq(1)
        for r, pc in enumerate(piv):
            vec[pc] = -red[r, free] / red[r, pc]
        m = fmpq_mat(n, n, [0] * (n * n))
        for c in range(k):
            m += hs[c] * vec[c]
        basis.append(m)
    return basis


def slice_audit(R, ts=None, samples=100, seed=0):
    """
    Dimension ledger and conjugation spot checks for sZN_s in SL_n.
    R is a type-A realization; ts are the t_i (defaults to all 1).
    """
    rs = R.rs
    if rs.kind != "A":
        raise ValueError("group-level audit is implemented for type A only")
    n = rs.rank + 1
    gammas = list(R.gammas)
    lp = len(gammas)
    ts = [Fraction(1)] * lp if ts is None else [Fraction(t) for t in ts]
    if any(t == 0 for t in ts):
        raise HypothesisError("some t_i vanish")
    rep = s_representative(n, gammas, ts)
    D = rs.D
    l = rs.rank
    dim_g = n * n - 1
    mplus = len(R.m_plus)
    ls, D0 = R.length, R.D0

    # induced Weyl element on the torus
    perm = permutation_of(rep)
    expected = _weyl_permutation(rs, rs.element(R.working_word))
    torus_ok = perm == expected

    # N, N-bar, N_s from conjugation by rep
    nil = list(R.nilradical)
    nbar = [root_vector(n, _neg(b)) for b in nil]
    ns_roots = [b for b in nil if _in_span(nbar, rep.conj(root_vector(n, b)))]
    # Z: semisimple Levi part plus the centralizer of s in h
    levi = [root_vector(n, b) for b in R.levi_roots]
    hs = _torus_centralizer(n, rep)
    z_gens = levi + [root_vector(n, b) * root_vector(n, _neg(b)) - root_vector(n, _neg(b)) * root_vector(n, b)
                     for b in R.levi_roots if max(b) > 0] + hs
    dim_z = _span_rank(z_gens)
    dim_ns = len(ns_roots)

    ledger = {
        "dim_G": dim_g,
        "m_plus": mplus,
        "dim_G_minus_2m": dim_g - 2 * mplus,
        "formula": ls + 2 * D0 + l - lp,
        "dimZ_plus_dimNs": dim_z + dim_ns,
        "via_dimm": 2 * D + l - 2 * (D - (Fraction(ls - lp, 2) + D0)),
    }
    balanced = (ledger["dim_G_minus_2m"] == ledger["formula"] == ledger["dimZ_plus_dimNs"]
                == ledger["via_dimm"])
    levi_is_fixed = sorted(R.levi_roots) == sorted(R.fixed_roots)

    spot = conjugation_spot_check(R, rep, ns_roots, samples, seed)
    return {
        "type": rs.label,
        "s": [i + 1 for i in R.word],
        "working_element": [i + 1 for i in R.working_word],
        "t": [str(t) for t in ts],
        "representative": rep.dump(),
        "induces_s": torus_ok,
        "dims": {"Z": dim_z, "N": len(nil), "Nbar": len(nil), "N_s": dim_ns, "M_plus": mplus,
                 "l(s)": ls, "D0": D0, "l": l, "l_prime": lp},
        "N_s_roots": [list(b) for b in ns_roots],
        "levi_equals_fixed": levi_is_fixed,
        "ledger": {k: str(v) for k, v in ledger.items()},
        "balanced": balanced,
        "spot_check": spot,
        "ok": balanced and torus_ok and spot["ok"],
    }


def _random_rational(rng):
    num = rng.randint(-30, 30)
    return Fraction(num if num else 1, rng.randint(1, 7))


def _random_from_roots(n, roots, rng):
    g = GroupElement.identity(n)
    for b in roots:
        g = g * root_subgroup_element(n, b, _random_rational(rng))
    return g


def conjugation_spot_check(R, rep, ns_roots, samples=100, seed=0):
    """
    Random (x, y) in N x sZN_s; the products x y x^-1 must be pairwise
    distinct and lie in B w B for some w in s W_0.
    """
    rs = R.rs
    n = rs.rank + 1
    rng = random.Random(seed)
    nil = list(R.nilradical)
    levi_pos = [b for b in R.levi_roots if max(b) > 0]
    hs = _torus_centralizer(n, rep)
    w0 = [rs.element(())]
    levi_simple = [rs.simple.index(a) for a in R.levi_simple]
    frontier = list(w0)
    seen = set(w0)
    while frontier:
        nxt = []
        for w in frontier:
            for i in levi_simple:
                x = w * rs.simple_reflection(i)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    sperm = permutation_of(rep)
    allowed = {_compose(sperm, _weyl_permutation(rs, w)) for w in seen}
    outputs = {}
    inputs = set()
    collisions = 0
    misplaced = 0
    attempts = 0
    while len(inputs) < samples and attempts < 50 * samples:
        attempts += 1
        x = _random_from_roots(n, nil, rng)
        z = _random_from_roots(n, levi_pos, rng) * _random_from_roots(n, [_neg(b) for b in levi_pos], rng)
        for h in hs:
            # c^h for an integral h in the centralizer: a rational point of its torus
            ex = [_frac(h[i, i]) for i in range(n)]
            den = 1
            for e in ex:
                den = den * e.denominator // _gcd(den, e.denominator)
            c = _random_rational(rng)
            z = z * GroupElement(diag([c ** int(e * den) for e in ex]), check=False)
        y = rep * z * _random_from_roots(n, ns_roots, rng)
        key_in = (x, y)
        if key_in in inputs:
            continue
        inputs.add(key_in)
        g = x * y * x.inverse()
        if g in outputs and outputs[g] != key_in:
            collisions += 1
        outputs[g] = key_in
        if bruhat_permutation(g) not in allowed:
            misplaced += 1
    return {"samples": len(inputs), "collisions": collisions, "misplaced": misplaced,
            "ok": collisions == 0 and misplaced == 0 and len(inputs) >= min(samples, 100)}
