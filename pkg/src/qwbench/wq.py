"""
The character chi_q^s, the left ideal I_q it generates, and Whittaker
invariants in the quotient.

Elements of C[G^*] are represented inside the twisted algebra.  I_q is the
left ideal generated by e~_b - chi(e~_b), b in m_+.  Because m_+ is a
segment at one end of the ordering, a suitable f t e order puts its
e-factors at the right edge of every PBW monomial, so reduction modulo I_q
replaces each of them by the scalar chi(e~_b)/(1 - q_b^-2).  The monomials
free of m_+ e-letters form a basis of the quotient.

whittaker_session decides whether m_+ is taken as the initial segment of
the ordering or as the final segment of the reversed ordering.

The search space is a degree-bounded proxy: PBW monomials in f~_b, e~_b
(b outside m_+) and t-monomials from the lattice spanned by the exponents
2d p_ij, with lattice coordinates in a box.  Every result carries its bounds.
"""

from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction
from itertools import product

from .algebra import Session
from .coeff import ONE, QV, render, vpow
from .hopf import HopfStructure, HypothesisError
from .linalg import inverse, kernel
from .pbw import DegreeBoundError, Element
from .words import add_into

ZERO = QV(0)


# -- polynomials in the symbolic k_i ----------------------------------------------------
class KPoly:
    """Polynomial in k_1..k_n with Q(v) coefficients, {exponent tuple: QV}."""

    __slots__ = ("n", "c")

    def __init__(self, n, c=None):
        self.n = n
        self.c = c or {}

    @classmethod
    def const(cls, n, x):
        x = x if isinstance(x, QV) else QV(x)
        return cls(n, {(0,) * n: x} if x else {})

    @classmethod
    def var(cls, n, i):
        return cls(n, {tuple(int(j == i) for j in range(n)): ONE})

    def __add__(self, other):
        out = dict(self.c)
        for k, x in other.c.items():
            add_into(out, k, x)
        return KPoly(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, x):
        x = x if isinstance(x, QV) else QV(x)
        if not x:
            return KPoly(self.n)
        return KPoly(self.n, {k: y * x for k, y in self.c.items()})

    def __mul__(self, other):
        if not isinstance(other, KPoly):
            return self.scale(other)
        out = {}
        for k1, x in self.c.items():
            for k2, y in other.c.items():
                add_into(out, tuple(a + b for a, b in zip(k1, k2)), x * y)
        return KPoly(self.n, out)

    def __pow__(self, m):
        out = KPoly.const(self.n, ONE)
        for _ in range(m):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, KPoly) and self.n == other.n and self.c == other.c

    __hash__ = None

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c):
            mono = "*".join(f"k{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(k) if e)
            parts.append(f"({render(self.c[k])})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


# -- character ---------------------------------------------------------------------------
class WhittakerCharacter:
    """
    chi(e~_b) = k_i for b = gamma_i and 0 on the other b in m_+.  values is
    a list of QV (numeric mode) or None (symbolic mode, k_i as variables).
    """

    def __init__(self, session, values=None):
        R = session.R
        if not R.simple_flag:
            raise HypothesisError("gamma_1..gamma_n are not simple")
        self.S = session
        self.gammas = [tuple(g) for g in R.gammas]
        self.lp = len(self.gammas)
        if values is not None:
            if len(values) != self.lp:
                raise ValueError(f"expected {self.lp} k-values, got {len(values)}")
            values = [x if isinstance(x, QV) else QV(x) for x in values]
        self.values = values
        self.mplus = sorted(session.pos[tuple(b)] for b in R.m_plus)
        m, D = len(self.mplus), session.D
        if self.mplus == list(range(m)):
            self.segment = "initial"
        elif self.mplus == list(range(D - m, D)):
            self.segment = "final"
        else:
            raise AssertionError("m_+ is not a segment at either end of the ordering")
        self.certificate = None

    @property
    def symbolic(self):
        return self.values is None

    def tilde_value(self, k):
        """chi(e~_{beta_k}) as a KPoly (symbolic) or QV."""
        beta = self.S.ordering[k]
        if beta in self.gammas:
            i = self.gammas.index(beta)
            return KPoly.var(self.lp, i) if self.symbolic else self.values[i]
        return KPoly(self.lp) if self.symbolic else ZERO

    def scale(self, k):
        return ONE - self.S.q_beta(self.S.ordering[k]) ** -2

    def e_value(self, k):
        """chi applied to e_{beta_k} = e~/(1 - q^-2)."""
        x = self.tilde_value(k)
        inv = self.scale(k).inverse()
        return x.scale(inv) if self.symbolic else x * inv

    def on_monomial(self, r):
        """chi(e^r) for an exponent vector r supported on m_+."""
        out = KPoly.const(self.lp, ONE) if self.symbolic else ONE
        for k, m in enumerate(r):
            if m:
                if k not in self.mplus:
                    raise ValueError("chi is only defined on m_+ monomials")
                out = out * (self.e_value(k) ** m)
        return out

    def dump(self):
        return {
            "gammas": [list(g) for g in self.gammas],
            "values": None if self.symbolic else [render(x) for x in self.values],
            "m_plus_positions": self.mplus,
        }


def relation_exponent(session, a, b):
    """v-exponent of q^{(alpha,beta) + (C alpha, beta)} for positions a, b."""
    rs = session.rs
    al, be = session.ordering[a], session.ordering[b]
    val = Fraction(rs.pair(al, be)) + rs.pair(session.R.cayley_apply(al), be)
    y = val * 2 * session.d
    if y.denominator != 1:
        raise ArithmeticError("relation exponent is not a v-power")
    return int(y)


def build_character(session, values=None):
    """
    A character with its certificate: for every pair a < b in m_+ the
    relation e~_a e~_b - q^(...) e~_b e~_a = sum (e~-monomials strictly
    between) is computed in the engine, and chi of both sides must vanish.
    """
    chi = WhittakerCharacter(session, values)
    alg = session.alg
    rows = []
    ok = True
    for a in chi.mplus:
        for b in chi.mplus:
            if a >= b:
                continue
            ex = relation_exponent(session, a, b)
            sa, sb = chi.scale(a), chi.scale(b)
            rel = (alg.e(a) * alg.e(b) - alg.e(b) * alg.e(a) * vpow(ex)) * (sa * sb)
            pub = rel.public()
            support_ok = True
            rhs = KPoly.const(chi.lp, ZERO) if chi.symbolic else ZERO
            for (r, s, t), c in pub.items():
                if any(s) or any(t) or any(r[k] for k in range(len(r)) if not a < k < b):
                    support_ok = False
                    continue
                val = chi.on_monomial(r)
                rhs = rhs + (val.scale(c) if chi.symbolic else val * c)
            ta, tb = chi.tilde_value(a), chi.tilde_value(b)
            lhs = (ta * tb).scale(ONE - vpow(ex)) if chi.symbolic else ta * tb * (ONE - vpow(ex))
            good = support_ok and not lhs and not rhs
            ok = ok and good
            rows.append({
                "pair": [list(session.ordering[a]), list(session.ordering[b])],
                "exponent": ex,
                "chi_lhs": str(lhs) if chi.symbolic else render(lhs),
                "chi_rhs": str(rhs) if chi.symbolic else render(rhs),
                "support_between": support_ok,
                "ok": good,
            })
    chi.certificate = {"ok": ok, "relations": rows}
    return chi


def mirrored_realization(R):
    """
    The same realization on the reversed normal ordering, so Delta_{m_+}
    becomes a final segment.  With this engine's root vectors the coproduct
    corrections of e_beta involve the roots after beta, which then stay
    inside m_+.
    """
    rs = R.rs
    rev = list(reversed(R.ordering))
    for word in rs.all_reduced_words_w0():
        if rs.ordering_from_word(word) == rev:
            return replace(R, ordering=rev, w0_word=tuple(word))
    raise AssertionError("reversed ordering has no reduced word")


def whittaker_session(session, convention="auto"):
    """
    Session used by the q-W layer, with a report.  "literal" keeps m_+ as the
    initial segment; "mirrored" reverses the ordering (mirrored_realization).
    "auto" takes the first of the two for which both hypotheses of the ideal
    argument hold: chi is a character (symbolic certificate) and U(m_+) is a
    left coideal (Delta of every e_b, b in m_+, lies in U(m_+) (x) U(b_+)).
    """
    names = ("literal", "mirrored") if convention == "auto" else (convention,)
    report = {}
    for name in names:
        if name == "literal":
            S = session
        elif name == "mirrored":
            S = Session(mirrored_realization(session.R), session.degree_bound)
        else:
            raise ValueError(convention)
        H = HopfStructure(S)
        cert = build_character(S).certificate["ok"]
        coideal = all(H.coideal_membership(S.alg.e(S.pos[tuple(b)])) for b in S.R.m_plus)
        report[name] = {"certificate": cert, "coideal": coideal}
        if cert and coideal or convention != "auto":
            report["convention"] = name
            return S, report
    raise HypothesisError(f"no ordering convention satisfies the hypotheses: {report}")


# -- ideal reduction ----------------------------------------------------------------------
class IdealContext:
    """Reduction modulo I_q in the f t e normal form."""

    def __init__(self, session, chi, degree_bound=None):
        if chi.symbolic:
            raise ValueError("reduction needs numeric k-values")
        self.S = session
        self.chi = chi
        # the m_+ e-factors must sit at the right edge of every monomial
        self.ralg = session.right("twisted", "right" if chi.segment == "initial" else "right-ascending")
        self.alg = session.alg
        self.degree_bound = degree_bound or session.degree_bound
        self.mplus = set(chi.mplus)
        self.cval = {k: chi.e_value(k) for k in chi.mplus}
        self._hopf = None

    def hopf(self):
        if self._hopf is None:
            self._hopf = HopfStructure(self.S)
        return self._hopf

    def generators(self):
        """e~_b - chi(e~_b) for b in m_+, as right-order elements."""
        out = []
        for k in self.chi.mplus:
            out.append(self.ralg.e(k) * self.chi.scale(k) - self.ralg.scalar(self.chi.tilde_value(k)))
        return out

    def reduce(self, x):
        """Canonical representative of x + I_q (a right-order element)."""
        if x.alg is not self.ralg:
            x = self.ralg.convert(x)
        if x.degree() > self.degree_bound:
            raise DegreeBoundError(f"degree {x.degree()} exceeds the reduction bound")
        out = {}
        for (r, s, t), c in x.public().items():
            coef = c
            r2 = list(r)
            for k in self.mplus:
                if r[k]:
                    coef = coef * self.cval[k] ** r[k]
                    r2[k] = 0
            if not coef:
                continue
            for key, y in self.ralg.from_public((tuple(r2), s, t), coef).items():
                add_into(out, key, y)
        return Element(self.ralg, out)

    def is_reduced(self, x):
        return self.reduce(x) == (x if x.alg is self.ralg else self.ralg.convert(x))

    def whittaker_test(self, x):
        """(e~_b - chi(e~_b)) x lies in I_q for every b in m_+."""
        if x.alg is not self.ralg:
            x = self.ralg.convert(x)
        return all(not self.reduce(g * x) for g in self.generators())

    def ad_invariance_test(self, x):
        """Ad e_b(x) lies in I_q (= eps(e_b) x) for every b in m_+."""
        H = self.hopf()
        y = self.alg.convert(x) if x.alg is not self.alg else x
        for k in self.chi.mplus:
            if self.reduce(H.adjoint(self.alg.e(k), y)):
                return False
        return True


# -- the proxy basis and invariants --------------------------------------------------------
def torus_lattice(session):
    """
    Rows of the exponent block prod_j t_j^{2d p_ij}.  The column blocks
    prod_j t_j^{2d p_ji} are also generators; they must lie in the row
    lattice, which is checked here.
    """
    p = session.R.cayley.p
    d = session.d
    rows = []
    for i in range(session.l):
        row = []
        for j in range(session.l):
            y = p[i][j] * 2 * d
            if y.denominator != 1:
                raise ArithmeticError("2d p_ij is not an integer")
            row.append(int(y))
        rows.append(tuple(row))
    inv = inverse([[Fraction(x) for x in r] for r in rows])
    for j in range(session.l):
        col = [rows[i][j] for i in range(session.l)]
        coords = [sum(col[i] * inv[i][k] for i in range(session.l)) for k in range(session.l)]
        if any(c.denominator != 1 for c in coords):
            raise ArithmeticError("column exponents leave the row lattice")
    return rows


def coset_basis(ctx, max_degree, box=2):
    """
    Reduced proxy monomials f~^t t^s e~^r (r outside m_+) of PBW degree
    <= max_degree with s = sum m_i row_i, |m_i| <= box.  Returns a list of
    (label, right-order element).
    """
    S = ctx.S
    ralg = ctx.ralg
    D = S.D
    rows = torus_lattice(S)
    outside = [k for k in range(D) if k not in ctx.mplus]
    b = [S.R.coroot_exponent(beta) for beta in S.ordering]
    scale = [ctx.chi.scale(k) for k in range(D)]
    exps = []

    def rec(k, left, acc, keys):
        if k == len(keys):
            exps.append(tuple(acc))
            return
        for m in range(left + 1):
            acc.append(m)
            rec(k + 1, left - m, acc, keys)
            acc.pop()

    keys = list(range(D)) + [D + k for k in outside]
    rec(0, max_degree, [], keys)
    out = []
    for ms in product(range(-box, box + 1), repeat=S.l):
        s = tuple(sum(m * row[j] for m, row in zip(ms, rows)) for j in range(S.l))
        for ex in sorted(exps, key=lambda e: (sum(e), e)):
            tpart, rpart = ex[:D], ex[D:]
            x = ralg.one()
            for k in reversed(range(D)):
                if tpart[k]:
                    ft = ralg.torus(b[k]) * ralg.f(k) * scale[k]
                    x = x * ft ** tpart[k]
            x = x * ralg.torus(s)
            for j, k in reversed(list(enumerate(outside))):
                if rpart[j]:
                    x = x * (ralg.e(k) * scale[k]) ** rpart[j]
            label = {"f~": list(tpart), "lattice": list(ms), "e~": list(rpart), "degree": sum(ex)}
            out.append((label, ctx.reduce(x)))
    return out


def _vectorize(elements):
    keys = {}
    for x in elements:
        for k in x.terms:
            keys.setdefault(k, len(keys))
    return keys


def w_elements(ctx, max_degree, box=2):
    """
    Basis of the Whittaker invariants inside the proxy coset span, by a
    kernel computation over Q(v).  Returns a report with the basis (as
    right-order elements), their degrees and a closure check on products.
    """
    basis = coset_basis(ctx, max_degree, box)
    elems = [x for _, x in basis]
    images = []
    for x in elems:
        images.append([ctx.reduce(g * x) for g in ctx.generators()])
    keys = {}
    for imgs in images:
        for gi, y in enumerate(imgs):
            for k in y.terms:
                keys.setdefault((gi, k), len(keys))
    n = len(elems)
    rows = [[ZERO] * n for _ in range(len(keys))]
    for j, imgs in enumerate(images):
        for gi, y in enumerate(imgs):
            for k, c in y.terms.items():
                rows[keys[(gi, k)]][j] = c
    ker = kernel(rows, n, ONE, ZERO) if rows else [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    invariants = []
    for vec in ker:
        x = ctx.ralg.element()
        for c, e in zip(vec, elems):
            if c:
                x = x + e * c
        invariants.append(x)
    return {
        "max_degree": max_degree,
        "box": box,
        "candidates": n,
        "dimension": len(invariants),
        "invariants": invariants,
        "degrees": [x.degree() for x in invariants],
    }


def closure_check(ctx, invariants, limit=None):
    """Products of invariants are again Whittaker invariants (within the bound)."""
    checked = 0
    failures = []
    overflow = 0
    inv = invariants[:limit] if limit else invariants
    for i, x in enumerate(inv):
        for y in inv[i:]:
            try:
                z = ctx.reduce(x * y)
                ok = ctx.whittaker_test(z)
            except DegreeBoundError:
                overflow += 1
                continue
            checked += 1
            if not ok:
                failures.append((i, inv.index(y)))
    return {"checked": checked, "failures": failures, "overflow": overflow}


def agreement(ctx, max_degree, box=2, samples=20, seed=0):
    """
    whittaker_test vs ad_invariance_test on every proxy basis coset, on the
    invariants found by w_elements, and on random combinations of
    invariants with and without a basis-coset perturbation.
    """
    rng = random.Random(seed)
    basis = coset_basis(ctx, max_degree, box)
    inv = w_elements(ctx, max_degree, box)["invariants"]
    cases = [("coset", label, x) for label, x in basis]
    cases += [("invariant", i, x) for i, x in enumerate(inv)]
    for j in range(samples):
        x = ctx.ralg.element()
        for y in inv:
            x = x + y * QV(rng.randint(-3, 3))
        if j % 2:
            label, z = basis[rng.randrange(len(basis))]
            x = x + z
            cases.append(("perturbed", label, x))
        else:
            cases.append(("combination", j, x))
    rows = []
    disagree = 0
    for kind, label, x in cases:
        w = ctx.whittaker_test(x)
        a = ctx.ad_invariance_test(x)
        if w != a:
            disagree += 1
        rows.append({"kind": kind, "label": label, "whittaker": w, "ad_invariant": a})
    return {"max_degree": max_degree, "box": box, "tested": len(rows),
            "invariant_cases": sum(r["whittaker"] for r in rows),
            "disagreements": disagree, "rows": rows}


def wh_of_module(M, chi):
    """Joint kernel of pi(e~_b) - chi(e~_b) over b in m_+ on a weight module."""
    if chi.symbolic:
        raise ValueError("numeric k-values required")
    n = M.dim
    rows = []
    for k in chi.mplus:
        A = M.letter(k).scale(chi.scale(k))
        c = chi.tilde_value(k)
        dense = A.dense()
        for i in range(n):
            row = list(dense[i])
            if c:
                row[i] = row[i] - c
            if any(row):
                rows.append(row)
    return kernel(rows, n, ONE, ZERO)
