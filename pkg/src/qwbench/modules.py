"""
Weight modules for small rank.

A module stores matrices of the simple generators of one flavor of the
session's algebra: "twisted" (e_i, f_i of U_q^s) or "standard" (X_i^+-).
t-monomials act diagonally through a character of each basis vector.
Arbitrary PBW elements act by expanding root vectors into simple words.

Finite modules are written down for the standard algebra and transported to
the twisted one through psi: e_i -> X_i^+ t^kappa_i, f_i -> t^-kappa_i X_i^-.
Verma modules are computed directly by straightening in the f t e order of
the PBW engine, where e-factors meet the highest-weight vector first.
"""

from __future__ import annotations

import random

from .coeff import ONE, QV, qbinom, qint, vpow
from .hopf import HopfStructure
from .linalg import kernel
from .pbw import Element
from .words import add_into

ZERO = QV(0)


class UnsupportedModule(ValueError):
    pass


# -- sparse matrices ---------------------------------------------------------------
class Mat:
    """Sparse square matrix {(row, col): QV}."""

    __slots__ = ("n", "m")

    def __init__(self, n, m=None):
        self.n = n
        self.m = m or {}

    @classmethod
    def identity(cls, n):
        return cls(n, {(i, i): ONE for i in range(n)})

    @classmethod
    def diag(cls, vals):
        return cls(len(vals), {(i, i): c for i, c in enumerate(vals) if c})

    def __add__(self, other):
        out = dict(self.m)
        for k, c in other.m.items():
            add_into(out, k, c)
        return Mat(self.n, out)

    def __neg__(self):
        return Mat(self.n, {k: -c for k, c in self.m.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return Mat(self.n)
        return Mat(self.n, {k: x * c for k, x in self.m.items()})

    def __mul__(self, other):
        if not isinstance(other, Mat):
            return self.scale(other if isinstance(other, QV) else QV(other))
        rows = {}
        for (i, j), c in other.m.items():
            rows.setdefault(i, []).append((j, c))
        out = {}
        for (i, k), a in self.m.items():
            for j, b in rows.get(k, ()):
                add_into(out, (i, j), a * b)
        return Mat(self.n, out)

    def __pow__(self, k):
        out = Mat.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return self.n == other.n and self.m == other.m

    def __bool__(self):
        return bool(self.m)

    def kron(self, other):
        n2 = other.n
        out = {}
        for (i, j), a in self.m.items():
            for (k, l), b in other.m.items():
                out[(i * n2 + k, j * n2 + l)] = a * b
        return Mat(self.n * n2, out)

    def restrict_cols(self, cols):
        keep = set(cols)
        return Mat(self.n, {k: c for k, c in self.m.items() if k[1] in keep})

    def is_nilpotent(self):
        p = self
        for _ in range(self.n):
            if not p:
                return True
            p = p * self
        return not p

    def dense(self):
        return [[self.m.get((i, j), ZERO) for j in range(self.n)] for i in range(self.n)]

    def inverse(self):
        from .linalg import inverse
        inv = inverse(self.dense(), ONE, ZERO)
        return Mat(self.n, {(i, j): c for i, row in enumerate(inv) for j, c in enumerate(row) if c})

    def witness(self):
        """First nonzero entry in row-major order, or None."""
        if not self.m:
            return None
        k = min(self.m)
        return k, self.m[k]


def flip(n1, n2):
    """The swap V (x) W -> W (x) V on basis indices."""
    return Mat(n1 * n2, {(b * n1 + a, a * n2 + b): ONE for a in range(n1) for b in range(n2)})


# -- letter expansions -------------------------------------------------------------------
def standard_expansion(session, letter):
    """Standard root-vector letter as a combination of simple letter words."""
    D = session.D
    k = letter if letter < D else letter - D
    src = session.Xp[k] if letter < D else session.Xm[k]
    out = {}
    for (ew, _, fw), c in src.items():
        w = ew if letter < D else fw
        add_into(out, tuple(session.simple_pos[i] + (0 if letter < D else D) for i in w), c)
    return out


class WeightModule:
    """
    Generator matrices plus a torus character per basis vector.

    tchar[j] is the list of values of t_1..t_l on basis vector j; t^s acts
    by prod tchar[j][i]^s_i.  Columns in `boundary` are where truncation
    makes the action unreliable.
    """

    def __init__(self, session, flavor, labels, weights, E, F, tchar, boundary=(), name=""):
        self.S = session
        self.flavor = flavor
        self.labels = list(labels)
        self.weights = [tuple(w) for w in weights]
        self.E = list(E)
        self.F = list(F)
        self.tchar = [list(c) for c in tchar]
        self.boundary = frozenset(boundary)
        self.name = name
        self.dim = len(self.labels)
        self.alg = session.alg if flavor == "twisted" else session.std
        self._letter = {}
        self._hopf = None
        self.heights = None     # per-column f-height, set for truncated modules
        self.depth = None

    # -- actions -----------------------------------------------------------------
    def torus(self, s):
        vals = []
        for ch in self.tchar:
            c = ONE
            for i, k in enumerate(s):
                if k:
                    c = c * ch[i] ** k
            vals.append(c)
        return Mat.diag(vals)

    def hopf(self):
        if self._hopf is None:
            self._hopf = HopfStructure(self.S)
        return self._hopf

    def expansion(self, letter):
        if self.flavor == "twisted":
            return self.hopf().expansion(letter)
        return standard_expansion(self.S, letter)

    def letter(self, x):
        got = self._letter.get(x)
        if got is not None:
            return got
        D = self.S.D
        out = Mat(self.dim)
        for word, c in self.expansion(x).items():
            m = Mat.identity(self.dim)
            for z in word:
                if z < D:
                    m = m * self.E[self.S.simple_pos.index(z)]
                else:
                    m = m * self.F[self.S.simple_pos.index(z - D)]
            out = out + m.scale(c)
        self._letter[x] = out
        return out

    def act_terms(self, terms):
        out = Mat(self.dim)
        for (w, s), c in terms.items():
            m = Mat.identity(self.dim)
            for z in w:
                m = m * self.letter(z)
            if any(s):
                m = m * self.torus(s)
            out = out + m.scale(c)
        return out

    def act(self, x):
        if x.alg is not self.alg:
            raise ValueError("element and module belong to different algebras")
        return self.act_terms(x.terms)

    def e(self, i):
        return self.E[i]

    def f(self, i):
        return self.F[i]

    def t(self, i, power=1):
        s = [0] * self.S.l
        s[i] = power
        return self.torus(s)

    def K(self, i, power=1):
        return self.torus(self.S.W.k_vec(i, power))

    def reliable(self, margin=0):
        """Columns whose action is exact; margin reserves room for extra f-height."""
        if self.heights is None or not margin:
            return [j for j in range(self.dim) if j not in self.boundary]
        return [j for j in range(self.dim) if self.heights[j] + margin <= self.depth]

    def f_height(self, x):
        """Largest total height of f letters in a PBW word of x."""
        D = self.S.D
        hts = [sum(b) for b in self.S.ordering]
        return max((sum(hts[z - D] for z in w if z >= D) for w, _ in x.terms), default=0)

    # -- checks -------------------------------------------------------------------
    def relation_defects(self):
        """
        The defining relations as matrices restricted to reliable columns:
        t-conjugation, the cross relation (with q^c_ji in the twisted flavor)
        and the q-Serre relations.  Returns {name: Mat}; all should be zero.
        """
        S = self.S
        l = S.l
        out = {}
        twisted = self.flavor == "twisted"
        cols = self.reliable()
        for i in range(l):
            ti, tinv = self.t(i), self.t(i, -1)
            for j in range(l):
                a = S.rs.cartan[i][j]
                out[f"t{i + 1}e{j + 1}"] = ti * self.E[j] * tinv - self.E[j].scale(vpow(a))
                out[f"t{i + 1}f{j + 1}"] = ti * self.F[j] * tinv - self.F[j].scale(vpow(-a))
                c = vpow(S.c_int(j, i)) if twisted else ONE
                x = self.E[i] * self.F[j] - (self.F[j] * self.E[i]).scale(c)
                if i == j:
                    qi = S.sub(i).value
                    x = x - (self.K(i) - self.K(i, -1)).scale((qi - qi.inverse()).inverse())
                out[f"e{i + 1}f{j + 1}"] = x
        for i in range(l):
            for j in range(l):
                if i == j:
                    continue
                m = 1 - S.rs.cartan[i][j]
                c = S.c_int(i, j) if twisted else 0
                for name, G in (("e", self.E), ("f", self.F)):
                    tot = Mat(self.dim)
                    for r in range(m + 1):
                        coef = qbinom(m, r, S.sub(i)) * vpow(r * c)
                        if r % 2:
                            coef = -coef
                        tot = tot + (G[i] ** (m - r) * G[j] * G[i] ** r).scale(coef)
                    out[f"serre_{name}{i + 1}{j + 1}"] = tot
        return {k: v.restrict_cols(cols) for k, v in out.items()}

    def relations_hold(self):
        return not any(self.relation_defects().values())

    def homomorphism_defects(self, samples=5, degree=2, seed=0):
        """pi(xy) - pi(x)pi(y) on random PBW elements; returns nonzero defects."""
        rng = random.Random(seed)
        bad = []
        for _ in range(samples):
            x = random_element(self.alg, rng, degree)
            y = random_element(self.alg, rng, degree)
            cols = self.reliable(self.f_height(x) + self.f_height(y))
            d = (self.act(x * y) - self.act(x) * self.act(y)).restrict_cols(cols)
            if d:
                bad.append((x, y, d.witness()))
        return bad

    def endomorphism_dimension(self):
        """dim of the commutant of the generators (1 for an irreducible module)."""
        n = self.dim
        gens = list(self.E) + list(self.F) + [self.t(i) for i in range(self.S.l)]
        rows = []
        for G in gens:
            g = G.dense()
            # (XG - GX)_{ab} = sum_c X_ac G_cb - G_ac X_cb, unknown X_ac at index a*n+c
            for a in range(n):
                for b in range(n):
                    row = [ZERO] * (n * n)
                    for c in range(n):
                        if g[c][b]:
                            row[a * n + c] = row[a * n + c] + g[c][b]
                        if g[a][c]:
                            row[c * n + b] = row[c * n + b] - g[a][c]
                    if any(row):
                        rows.append(row)
        return len(kernel(rows, n * n, ONE, ZERO))

    def dump(self):
        return {
            "name": self.name,
            "flavor": self.flavor,
            "dim": self.dim,
            "weights": [list(w) for w in self.weights],
            "boundary": sorted(self.boundary),
            "E": [render_matrix(m) for m in self.E],
            "F": [render_matrix(m) for m in self.F],
        }


def render_matrix(m):
    from .coeff import render
    return [[render(m.m.get((i, j), ZERO)) for j in range(m.n)] for i in range(m.n)]


def random_element(alg, rng, degree=2, terms=3):
    """A random combination of PBW words of length <= degree with small torus parts."""
    D = alg.D
    x = alg.element()
    for _ in range(terms):
        k = rng.randint(0, degree)
        word = tuple(rng.randrange(2 * D) for _ in range(k))
        s = tuple(rng.randint(-1, 1) for _ in range(alg.l))
        c = QV(rng.randint(1, 3)) * vpow(rng.randint(-2, 2))
        x = x + alg.from_word(word, s, c)
    return x


# -- finite modules -------------------------------------------------------------------
def _dynkin(rs, root_coords):
    return tuple(rs.coroot_pairing(root_coords, i) for i in range(rs.rank))


def _standard_data(session, case):
    """Weights (Dynkin labels) and standard X^+- matrices for a supported case."""
    rs = session.rs
    label = rs.label
    if case == "trivial":
        return [(0,) * rs.rank], [Mat(1) for _ in range(rs.rank)], [Mat(1) for _ in range(rs.rank)]
    if label == "A1" and case.startswith("spin"):
        n = int(case[4:])
        if not 0 <= n <= 4:
            raise UnsupportedModule("A1 spin-n/2 modules are supported for n <= 4")
        sub = session.sub(0)
        # v_k has weight n - 2k; X^+ v_k = [n-k+1] v_{k-1}, X^- v_k = [k+1] v_{k+1}
        E = Mat(n + 1, {(k - 1, k): qint(n - k + 1, sub) for k in range(1, n + 1)})
        F = Mat(n + 1, {(k + 1, k): qint(k + 1, sub) for k in range(n)})
        return [(n - 2 * k,) for k in range(n + 1)], [E], [F]
    if label == "A2" and case in ("vector", "dual"):
        # minuscule: a chain of weights joined by single simple lowerings
        chain = [0, 1] if case == "vector" else [1, 0]
        top = (1, 0) if case == "vector" else (0, 1)
        weights = [top]
        for i in chain:
            al = _dynkin(rs, rs.simple[i])
            weights.append(tuple(x - y for x, y in zip(weights[-1], al)))
        E = [Mat(3), Mat(3)]
        F = [Mat(3), Mat(3)]
        for k, i in enumerate(chain):
            E[i] = E[i] + Mat(3, {(k, k + 1): ONE})
            F[i] = F[i] + Mat(3, {(k + 1, k): ONE})
        return weights, E, F
    raise UnsupportedModule(f"no finite module {case!r} for {label}")


def finite_module(session, case, flavor="twisted"):
    """
    A1: "spin0".."spin4" (spin-n/2, dimension n+1); A2: "vector", "dual";
    any type: "trivial".
    """
    weights, E, F = _standard_data(session, case)
    n = len(weights)
    tchar = [[vpow(w[i]) for i in range(session.l)] for w in weights]
    V = WeightModule(session, "standard", range(n), weights, E, F, tchar, name=case)
    if flavor == "standard":
        return V
    S = session
    Et, Ft = [], []
    for i in range(S.l):
        kap = S.kappa[S.simple_pos[i]]
        Et.append(E[i] * V.torus(kap))
        Ft.append(V.torus(tuple(-x for x in kap)) * F[i])
    return WeightModule(S, "twisted", range(n), weights, Et, Ft, tchar, name=case)


# -- Verma modules ----------------------------------------------------------------------
def _f_monomials(session, depth):
    """Exponent vectors t with sum t_k ht(beta_k) <= depth, by height then t."""
    D = session.D
    hts = [sum(b) for b in session.ordering]
    out = []

    def rec(k, rem, acc):
        if k == D:
            out.append(tuple(acc))
            return
        m = 0
        while m * hts[k] <= rem:
            acc.append(m)
            rec(k + 1, rem - m * hts[k], acc)
            acc.pop()
            m += 1

    rec(0, depth, [])
    return sorted(out, key=lambda t: (sum(x * h for x, h in zip(t, hts)), t))


def verma_module(session, lam, depth, flavor="twisted"):
    """
    The Verma module of highest weight lam truncated to f-monomials of height
    <= depth.  lam is either a tuple of integers (Dynkin labels, t_i acting by
    v^lam_i on the top) or a tuple of nonzero QV values of t_i on the top.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    S = session
    alg = S.alg if flavor == "twisted" else S.std
    ralg = S.right(flavor)
    l = S.l
    top = [x if isinstance(x, QV) else vpow(int(x)) for x in lam]
    integral = all(not isinstance(x, QV) for x in lam)
    basis = _f_monomials(S, depth)
    index = {t: j for j, t in enumerate(basis)}
    hts = [sum(b) for b in S.ordering]
    zero_r = (0,) * S.D

    def depth_of(t):
        return sum(x * h for x, h in zip(t, hts))

    def wt(t):
        return S.weight_of(t)

    def char(s):
        c = ONE
        for i, k in enumerate(s):
            if k:
                c = c * top[i] ** k
        return c

    def apply(x, j):
        """x * f^t v as ({index: coef}, truncated?), straightened in f t e order."""
        t = basis[j]
        vec = ralg.monomial(zero_r, S.zero_s, t)
        out = {}
        cut = False
        for (r, s, t2), c in (ralg.convert(x) * vec).public().items():
            if any(r):
                continue
            k = index.get(t2)
            if k is None:
                cut = True
                continue
            add_into(out, k, c * char(s))
        return out, cut

    E, F = [], []
    boundary = set()
    gens_e = [alg.e(S.simple_pos[i]) for i in range(l)]
    gens_f = [alg.f(S.simple_pos[i]) for i in range(l)]
    for G, store in ((gens_e, E), (gens_f, F)):
        for g in G:
            m = {}
            for j in range(len(basis)):
                col, cut = apply(g, j)
                if cut:
                    boundary.add(j)
                for k, c in col.items():
                    m[(k, j)] = c
            store.append(Mat(len(basis), m))
    for j, t in enumerate(basis):
        if depth_of(t) == depth:
            boundary.add(j)
    tchar = []
    weights = []
    for t in basis:
        w = S.rs.coroot_pairing
        dyn = tuple(w(wt(t), i) for i in range(l))
        tchar.append([top[i] * vpow(-dyn[i]) for i in range(l)])
        weights.append(tuple((lam[i] if integral else 0) - dyn[i] for i in range(l)))
    labels = [f"f^{list(t)}v" for t in basis]
    V = WeightModule(S, flavor, labels, weights, E, F, tchar, boundary,
                     name=f"verma{tuple(lam) if integral else '(symbolic)'}/{depth}")
    V.basis_exponents = basis
    V.heights = [depth_of(t) for t in basis]
    V.depth = depth
    V.apply = apply
    return V


def tensor_module(V, W):
    """V (x) W with generators acting through the coproduct."""
    if V.S is not W.S or V.flavor != W.flavor:
        raise ValueError("modules must share a session and flavor")
    S = V.S
    l = S.l
    E, F = [], []
    for i in range(l):
        if V.flavor == "twisted":
            H = V.hopf()
            a = H.a[i]
            cneg = tuple(-y for y in H.cexp[i])
            kneg = tuple(-y for y in H.kexp[i])
            E.append(V.E[i].kron(W.torus(a)) + Mat.identity(V.dim).kron(W.E[i]))
            F.append(V.F[i].kron(W.torus(cneg)) + V.torus(kneg).kron(W.F[i]))
        else:
            E.append(V.E[i].kron(W.K(i)) + Mat.identity(V.dim).kron(W.E[i]))
            F.append(V.F[i].kron(Mat.identity(W.dim)) + V.K(i, -1).kron(W.F[i]))
    labels = [(a, b) for a in V.labels for b in W.labels]
    weights = [tuple(x + y for x, y in zip(wa, wb)) for wa in V.weights for wb in W.weights]
    tchar = [[x * y for x, y in zip(ca, cb)] for ca in V.tchar for cb in W.tchar]
    boundary = {a * W.dim + b for a in range(V.dim) for b in range(W.dim)
                if a in V.boundary or b in W.boundary}
    return WeightModule(S, V.flavor, labels, weights, E, F, tchar, boundary,
                        name=f"({V.name})x({W.name})")


def element_on(V, x):
    """Convenience: accepts an Element or a raw term dict."""
    if isinstance(x, Element):
        return V.act(x)
    return V.act_terms(x)
