"""
Data attached to a Weyl group element s: a Carter decomposition s = s1 s2,
the associated positive system and normal ordering, the segment of roots
carrying the character, and the Cayley-transform constants.

The associated positive system is w(Delta_+) for some Weyl element w.  We
relabel it back to the standard system, so downstream code always works
with the standard simple roots and the conjugate element s' = w^-1 s w.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import linalg
from .lie import RootSystem


class RealizationError(RuntimeError):
    pass


def _frac_matrix(m):
    return [[Fraction(x) for x in row] for row in m]


def _sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _apply(m, vec):
    return [sum(m[i][j] * vec[j] for j in range(len(vec))) for i in range(len(m))]


def reflection_matrix(rs, gamma):
    """Matrix of s_gamma on simple-root coordinates."""
    n = rs.rank
    gg = rs.pair(gamma, gamma)
    cols = []
    for j in range(n):
        e = [1 if k == j else 0 for k in range(n)]
        c = Fraction(2 * rs.pair(e, gamma), gg)
        cols.append([e[k] - c * gamma[k] for k in range(n)])
    return tuple(tuple(int(cols[j][k]) for j in range(n)) for k in range(n))


def _matmul_int(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _identity_int(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@dataclass
class CayleyData:
    h_prime_basis: list
    fixed_basis: list
    projection: list        # B-orthogonal projection onto h'*
    cayley: list            # (1+s)/(1-s) P_{h'*}, on simple-root coordinates
    c: list
    n: list
    p: list
    d: int
    k_operator: list        # K in the basis H_i -> coefficients on Y_j


def cayley_constants(rs, mat):
    """Cayley transform and derived constants for the element with matrix mat."""
    n = rs.rank
    M = _frac_matrix(mat)
    I = linalg.identity(n)
    B = _frac_matrix(rs.form)
    one_minus = _sub(I, M)
    fixed = linalg.kernel(one_minus)
    hprime = [list(r) for r in linalg.rref(linalg.transpose(one_minus))[0] if any(r)]
    if fixed:
        F = linalg.transpose(fixed)
        FtB = linalg.matmul(linalg.transpose(F), B)
        gram = linalg.matmul(FtB, F)
        PF = linalg.matmul(F, linalg.matmul(linalg.inverse(gram), FtB))
    else:
        PF = [[Fraction(0)] * n for _ in range(n)]
    P = _sub(I, PF)
    inv = linalg.inverse(_add(one_minus, PF))
    C = linalg.matmul(_add(I, M), linalg.matmul(inv, P))
    simple = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    c = [[rs.pair(_apply(C, simple[i]), simple[j]) for j in range(n)] for i in range(n)]
    nmat = [[c[i][j] / (2 * rs.d[j]) for j in range(n)] for i in range(n)]
    omegas = fundamental_weights(rs)
    p = [[rs.pair(_apply(C, omegas[i]), omegas[j]) + rs.pair(omegas[i], omegas[j])
          for j in range(n)] for i in range(n)]
    d = 1
    for row in p:
        for x in row:
            d = lcm(d, (x / 2).denominator)
    k_op = [[nmat[i][j] / rs.d[i] for j in range(n)] for i in range(n)]
    return CayleyData(hprime, [list(f) for f in fixed], P, C, c, nmat, p, d, k_op)


def fundamental_weights(rs):
    """omega_i in simple-root coordinates: (omega_i, alpha_j) = d_j delta_ij."""
    n = rs.rank
    B = _frac_matrix(rs.form)
    binv = linalg.inverse(B)
    return [[binv[k][i] * rs.d[i] for k in range(n)] for i in range(n)]


@dataclass
class WeylRealization:
    rs: RootSystem
    word: tuple                 # canonical reduced word of s (0-based)
    conjugator: tuple           # w with associated system w(Delta_+)
    working_word: tuple         # canonical word of s' = w^-1 s w
    working_matrix: tuple
    gamma1: list
    gamma2: list
    w0_word: tuple
    ordering: list
    m_plus: list                # initial segment of the ordering ending at gamma_l'
    literal_segment: bool       # True when gamma_1 is the first root of the ordering
    simple_flag: bool
    length: int
    l_prime: int
    D0: int
    fixed_roots: list
    levi_simple: list
    levi_roots: list
    nilradical: list
    cayley: CayleyData
    candidates: int = 0
    checks: dict = field(default_factory=dict)

    @property
    def gammas(self):
        return self.gamma1 + self.gamma2

    @property
    def d(self):
        return self.cayley.d

    @property
    def c(self):
        return self.cayley.c

    @property
    def n(self):
        return self.cayley.n

    def dimm(self):
        """D - ((l(s) - l')/2 + D_0)."""
        return Fraction(self.rs.D) - (Fraction(self.length - self.l_prime, 2) + self.D0)

    def torus_exponent(self, mu):
        """
        t-exponent of e^{h mu} for mu in h* (simple-root coordinates), using
        e^{h H_k/2d} = t_k and alpha_k <-> d_k H_k.
        """
        out = []
        for k, x in enumerate(mu):
            y = Fraction(x) * 2 * self.d * self.rs.d[k]
            if y.denominator != 1:
                raise RealizationError(f"non-integral t-exponent for {mu} with d={self.d}")
            out.append(int(y))
        return tuple(out)

    def cayley_apply(self, mu):
        return _apply(self.cayley.cayley, [Fraction(x) for x in mu])

    def k_exponent(self, beta):
        """t-exponent of e^{h K beta^vee}."""
        mu = [Fraction(0)] * self.rs.rank
        om = fundamental_weights(self.rs)
        for i, b in enumerate(beta):
            for j in range(self.rs.rank):
                if b and self.n[i][j]:
                    for k in range(self.rs.rank):
                        mu[k] += b * self.n[i][j] * om[j][k]
        return self.torus_exponent(mu)

    def cayley_exponent(self, beta):
        """t-exponent of e^{h C beta^vee}."""
        return self.torus_exponent(self.cayley_apply(beta))

    def coroot_exponent(self, beta):
        """t-exponent of e^{h beta^vee}."""
        return self.torus_exponent(beta)

    def dump(self):
        def roots(rs_list):
            return [list(r) for r in rs_list]

        def mat(m):
            return [[str(x) for x in row] for row in m]

        return {
            "type": self.rs.label,
            "s": [i + 1 for i in self.word],
            "conjugator": [i + 1 for i in self.conjugator],
            "working_element": [i + 1 for i in self.working_word],
            "gamma1": roots(self.gamma1),
            "gamma2": roots(self.gamma2),
            "w0_word": [i + 1 for i in self.w0_word],
            "ordering": roots(self.ordering),
            "m_plus": roots(self.m_plus),
            "literal_segment": self.literal_segment,
            "simple_flag": self.simple_flag,
            "length": self.length,
            "l_prime": self.l_prime,
            "D0": self.D0,
            "dimm": str(self.dimm()),
            "levi_simple": roots(self.levi_simple),
            "h_prime_basis": mat(self.cayley.h_prime_basis),
            "cayley": mat(self.cayley.cayley),
            "c": mat(self.c),
            "n": mat(self.n),
            "p": mat(self.cayley.p),
            "d": self.d,
            "k_operator": mat(self.cayley.k_operator),
            "candidates": self.candidates,
        }


def _orthogonal_sets(rs, max_size):
    """All sets of mutually orthogonal positive roots, as sorted tuples."""
    pos = rs.positive
    out = [()]
    frontier = [()]
    for _ in range(max_size):
        nxt = []
        for s in frontier:
            start = pos.index(s[-1]) + 1 if s else 0
            for r in pos[start:]:
                if all(rs.pair(r, g) == 0 for g in s):
                    nxt.append(s + (r,))
        out.extend(nxt)
        frontier = nxt
    return out


def _product_of_reflections(rs, roots):
    m = _identity_int(rs.rank)
    for g in roots:
        m = _matmul_int(m, reflection_matrix(rs, g))
    return m


def _delta_of_matrix(rs, m):
    return [b for b in rs.positive if not rs.is_positive(_apply(m, b))]


def _rank_of(vectors):
    if not vectors:
        return 0
    return linalg.rank([[Fraction(x) for x in v] for v in vectors])


def carter_candidates(rs, mat):
    """
    All Carter decompositions of the element with matrix mat in the standard
    positive system, satisfying the reducedness conditions.  Yields
    (gamma1, gamma2) pairs of sorted root tuples.
    """
    n = rs.rank
    M = [[Fraction(x) for x in row] for row in mat]
    lp = linalg.rank(_sub(linalg.identity(n), M))
    sets = _orthogonal_sets(rs, lp)
    by_matrix = {}
    for s in sets:
        by_matrix.setdefault(_product_of_reflections(rs, s), []).append(s)
    ds = set(_delta_of_matrix(rs, mat))
    inv = _inverse_int(mat)
    dsinv = set(_delta_of_matrix(rs, inv))
    out = []
    for g1 in sets:
        s1 = _product_of_reflections(rs, g1)
        s2 = _matmul_int(s1, mat)
        for g2 in by_matrix.get(s2, []):
            if len(g1) + len(g2) != lp or _rank_of(list(g1) + list(g2)) != lp:
                continue
            d1 = _delta_of_matrix(rs, s1)
            d2 = _delta_of_matrix(rs, s2)
            if len(d1) + len(d2) != len(ds):
                continue
            img = [tuple(_apply(s2, b)) for b in d1]
            if set(d2) | set(img) != ds or len(set(d2) | set(img)) != len(ds):
                continue
            img2 = [tuple(_apply(s1, b)) for b in d2]
            if set(d1) | set(img2) != dsinv or len(set(d1) | set(img2)) != len(dsinv):
                continue
            out.append((g1, g2))
    return out, lp


def _inverse_int(m):
    inv = linalg.inverse([[Fraction(x) for x in row] for row in m])
    return tuple(tuple(int(x) for x in row) for row in inv)


def _conjugates(rs, s):
    """(w, w^-1 s w) for distinct conjugates, w minimal in (length, word)."""
    seen = set()
    out = []
    for w in rs.elements():
        sp = w.inverse() * s * w
        if sp in seen:
            continue
        seen.add(sp)
        out.append((w, sp))
    return out


def realize(rs, word, conjugator=None, w0_word=None):
    """
    Build the realization data for s = s_{word[0]} s_{word[1]} ... (0-based).

    The search runs over the distinct conjugates w^-1 s w, the Carter
    decompositions of each in the standard system, and all reduced words of
    w0; the lexicographically least valid candidate is returned.  The key
    prefers a segment starting at gamma_1, then the simplicity flag, then
    the shortest conjugator, then the larger first involution.
    """
    s = rs.element(tuple(word))
    best = None
    count = 0
    orderings = [(wd, rs.ordering_from_word(wd)) for wd in rs.all_reduced_words_w0()]
    if w0_word is not None:
        orderings = [(tuple(w0_word), rs.ordering_from_word(tuple(w0_word)))]
    conj = _conjugates(rs, s)
    if conjugator is not None:
        w = rs.element(tuple(conjugator))
        conj = [(w, w.inverse() * s * w)]
    for w, sp in conj:
        mat = sp.mat
        cands, lp = carter_candidates(rs, mat)
        if not cands:
            continue
        length = sp.length()
        D0 = sum(1 for b in rs.positive if tuple(_apply(mat, b)) == b)
        target = Fraction(rs.D) - (Fraction(length - lp, 2) + D0)
        for g1, g2 in cands:
            simple_flag = all(sum(g) == 1 for g in g1)
            for wd, order in orderings:
                pos = {b: k for k, b in enumerate(order)}
                if g1 and g2 and max(pos[g] for g in g1) > min(pos[g] for g in g2):
                    continue
                gam = sorted(g1, key=pos.get) + sorted(g2, key=pos.get)
                end = pos[gam[-1]] + 1 if gam else 0
                if end != target:
                    continue
                count += 1
                literal = not gam or pos[gam[0]] == 0
                key = (not literal, not simple_flag, w.length(), w.word(), -len(g1),
                       sorted(g1), sorted(g2), wd)
                if best is None or key < best[0]:
                    best = (key, w, sp, g1, g2, wd, order, gam, end, literal,
                            simple_flag, lp, length, D0)
    if best is None:
        raise RealizationError(
            f"no associated ordering found for s = {tuple(i + 1 for i in word)} in {rs.label}")
    (_, w, sp, g1, g2, wd, order, gam, end, literal, simple_flag, lp, length, D0) = best
    pos = {b: k for k, b in enumerate(order)}
    mat = sp.mat
    fixed = [b for b in rs.roots if tuple(_apply(mat, b)) == b]
    levi_simple = [a for a in rs.simple if a in fixed]
    levi_roots = [b for b in rs.roots if _in_span(b, levi_simple)]
    nil = [b for b in rs.positive if b not in levi_roots]
    cd = cayley_constants(rs, mat)
    return WeylRealization(
        rs=rs, word=s.word(), conjugator=w.word(), working_word=sp.word(),
        working_matrix=mat, gamma1=sorted(g1, key=pos.get), gamma2=sorted(g2, key=pos.get),
        w0_word=wd, ordering=order, m_plus=order[:end], literal_segment=literal,
        simple_flag=simple_flag, length=length, l_prime=lp, D0=D0,
        fixed_roots=fixed, levi_simple=levi_simple, levi_roots=levi_roots,
        nilradical=nil, cayley=cd, candidates=count,
    )


def _in_span(beta, simples):
    if not simples:
        return not any(beta)
    idx = [a.index(1) for a in simples]
    return all(x == 0 for k, x in enumerate(beta) if k not in idx)


def standard_realization(rs, w0_word=None):
    """The trivial element: no twist, used for the standard quantum group."""
    return realize(rs, (), w0_word=w0_word or min(rs.all_reduced_words_w0()))


def check_invariants(R):
    """Evaluate every structural invariant; returns name -> bool."""
    rs = R.rs
    n = rs.rank
    out = {}
    gam = R.gammas
    out["gamma_positive"] = all(rs.is_positive(g) for g in gam)
    out["gamma_orthogonal"] = all(rs.pair(a, b) == 0 for grp in (R.gamma1, R.gamma2)
                                  for a, b in itertools.combinations(grp, 2))
    out["gamma_basis_of_h_prime"] = _rank_of(gam) == R.l_prime == len(gam)
    s1 = _product_of_reflections(rs, R.gamma1)
    s2 = _product_of_reflections(rs, R.gamma2)
    out["s_equals_s1_s2"] = _matmul_int(s1, s2) == tuple(tuple(r) for r in R.working_matrix)
    l1, l2 = len(_delta_of_matrix(rs, s1)), len(_delta_of_matrix(rs, s2))
    out["reduced_decomposition"] = R.length == l1 + l2
    ds = set(_delta_of_matrix(rs, R.working_matrix))
    img = {tuple(_apply(s2, b)) for b in _delta_of_matrix(rs, s1)}
    out["delta_s_split"] = ds == set(_delta_of_matrix(rs, s2)) | img and \
        len(ds) == l1 + l2
    pos = {b: k for k, b in enumerate(R.ordering)}
    out["normal_ordering"] = rs.is_normal_ordering(R.ordering)
    out["gammas_increasing"] = all(pos[a] < pos[b] for a, b in zip(gam, gam[1:]))
    out["segment_initial"] = R.m_plus == R.ordering[:len(R.m_plus)]
    out["dimm"] = Fraction(len(R.m_plus)) == R.dimm()
    c, nm = R.c, R.n
    out["c_skew"] = all(c[i][j] == -c[j][i] for i in range(n) for j in range(n))
    out["eqpi"] = all(rs.d[j] * nm[i][j] - rs.d[i] * nm[j][i] == c[i][j]
                      for i in range(n) for j in range(n))
    out["p_rational"] = all(isinstance(x, Fraction) for row in R.cayley.p for x in row)
    out["d_clears_p"] = all((R.d * x / 2).denominator == 1 for row in R.cayley.p for x in row)
    out["q_c_integral"] = all((2 * R.d * x).denominator == 1 for row in c for x in row)
    return out
