"""
The twisted Hopf structure on U_q^s(g): coproduct, counit, antipode and the
right adjoint action Ad x(w) = S^-1(x_2) w x_1.

Tensors are dicts {(term_1, ..., term_n): QV} whose factors are internal
PBW terms (word, sigma) of the session's twisted algebra.  Coproducts of
non-simple root vectors go through their expansion in simple generators,
which is read off from the word engine and psi.
"""

from __future__ import annotations

from .coeff import ONE, vpow
from .pbw import Element
from .words import add_into


class HypothesisError(ValueError):
    pass


class Tensor:
    """An element of the n-fold tensor power of the twisted algebra."""

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg, n, terms=None):
        self.alg = alg
        self.n = n
        self.terms = terms or {}

    @classmethod
    def pure(cls, *xs):
        alg = xs[0].alg
        out = {((),): ONE}
        for x in xs:
            nxt = {}
            for k, c in out.items():
                for t, y in x.terms.items():
                    add_into(nxt, k + (t,), c * y)
            out = nxt
        return cls(alg, len(xs), {k[1:]: c for k, c in out.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            add_into(out, k, c)
        return Tensor(self.alg, self.n, out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c):
        return Tensor(self.alg, self.n, {k: x * c for k, x in self.terms.items()} if c else {})

    def __mul__(self, other):
        alg = self.alg
        out = {}
        cache = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                acc = {(): c1 * c2}
                for a, b in zip(k1, k2):
                    key = (a, b)
                    prod = cache.get(key)
                    if prod is None:
                        prod = alg.mul_terms({a: ONE}, {b: ONE})
                        cache[key] = prod
                    nxt = {}
                    for kk, cc in acc.items():
                        for t, y in prod.items():
                            add_into(nxt, kk + (t,), cc * y)
                    acc = nxt
                for kk, cc in acc.items():
                    add_into(out, kk, cc)
        return Tensor(alg, self.n, out)

    def __eq__(self, other):
        return self.n == other.n and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def map_factor(self, i, fn):
        """Apply a linear map (term -> internal dict or Tensor) to factor i."""
        out = {}
        for k, c in self.terms.items():
            img = fn(k[i])
            if isinstance(img, Tensor):
                for kk, y in img.terms.items():
                    add_into(out, k[:i] + kk + k[i + 1:], c * y)
            else:
                for t, y in img.items():
                    add_into(out, k[:i] + (t,) + k[i + 1:], c * y)
        n = self.n
        if out:
            n = len(next(iter(out)))
        return Tensor(self.alg, n, out)

    def collapse(self, order=None):
        """Multiply the factors together (in the given order) into one element."""
        alg = self.alg
        order = order or list(range(self.n))
        out = {}
        for k, c in self.terms.items():
            acc = {k[order[0]]: c}
            for i in order[1:]:
                acc = alg.mul_terms(acc, {k[i]: ONE})
            for t, y in acc.items():
                add_into(out, t, y)
        return Element(alg, out)


class HopfStructure:
    """Delta_s, S_s, S_s^-1, counit and Ad for one session."""

    def __init__(self, session):
        self.S = session
        self.alg = session.alg
        R = session.R
        self.l = session.l
        self.zero = session.zero_s
        simple = session.rs.simple
        # t-exponents of e^{h d_i (2/(1-s) P + P_perp) H_i}, e^{h d_i C H_i}, K_i
        self.a = [R.torus_exponent([x + y for x, y in zip(al, R.cayley_apply(al))])
                  for al in simple]
        self.cexp = [R.cayley_exponent(al) for al in simple]
        self.kexp = [R.coroot_exponent(al) for al in simple]
        self._delta = {}
        self._expansion = {}

    # -- simple-generator expansions ---------------------------------------------
    def expansion(self, x):
        """Letter x as a combination of words in simple-generator letters."""
        got = self._expansion.get(x)
        if got is not None:
            return got
        S = self.S
        D = S.D
        k = x if x < D else x - D
        if k in S.simple_pos:
            got = {(x,): ONE}
        else:
            src = S.Xp[k] if x < D else S.Xm[k]
            got = {}
            e0 = S.psi_exponent((x,))
            for (ew, s, fw), c in src.items():
                w = ew if x < D else fw
                letters = tuple(S.simple_pos[i] + (0 if x < D else D) for i in w)
                add_into(got, letters, c * vpow(e0 - S.psi_exponent(letters)))
        self._expansion[x] = got
        return got

    def expand_element(self, x):
        """Rewrite x through simple generators and check the round trip."""
        alg = self.alg
        out = alg.element()
        for (w, s), c in x.terms.items():
            y = alg.one()
            for z in w:
                part = alg.element()
                for u, cu in self.expansion(z).items():
                    part = part + alg.from_word(u) * cu
                y = y * part
            out = out + y * alg.torus(s) * c
        return out

    # -- generators ---------------------------------------------------------------
    def delta_simple(self, letter):
        S = self.S
        alg = self.alg
        D = S.D
        if letter < D:
            i = S.simple_pos.index(letter)
            e = alg.from_word((letter,))
            return Tensor.pure(e, alg.torus(self.a[i])) + Tensor.pure(alg.one(), e)
        i = S.simple_pos.index(letter - D)
        f = alg.from_word((letter,))
        neg = tuple(-y for y in self.cexp[i])
        kinv = tuple(-y for y in self.kexp[i])
        return Tensor.pure(f, alg.torus(neg)) + Tensor.pure(alg.torus(kinv), f)

    def delta_letter(self, x):
        got = self._delta.get(x)
        if got is not None:
            return got
        out = Tensor(self.alg, 2)
        for word, c in self.expansion(x).items():
            y = self._delta_torus(self.zero)
            for z in word:
                y = y * self.delta_simple(z)
            out = out + y.scale(c)
        self._delta[x] = out
        return out

    def _delta_torus(self, s):
        t = ((), tuple(s))
        return Tensor(self.alg, 2, {(t, t): ONE})

    def coproduct_terms(self, terms):
        out = Tensor(self.alg, 2)
        for (w, s), c in terms.items():
            y = self._delta_torus(self.zero)
            for z in w:
                y = y * self.delta_letter(z)
            y = y * self._delta_torus(s)
            out = out + y.scale(c)
        return out

    def coproduct(self, x):
        return self.coproduct_terms(x.terms)

    def counit(self, x):
        out = ONE - ONE
        for (w, s), c in x.terms.items():
            if not w:
                out = out + c
        return out

    # -- antipode -------------------------------------------------------------------
    def _s_simple(self, letter, inverse=False):
        S = self.S
        alg = self.alg
        D = S.D
        if letter < D:
            i = S.simple_pos.index(letter)
            ta = alg.torus(tuple(-y for y in self.a[i]))
            e = alg.from_word((letter,))
            return -(ta * e) if inverse else -(e * ta)
        i = S.simple_pos.index(letter - D)
        f = alg.from_word((letter,))
        tk, tc = alg.torus(self.kexp[i]), alg.torus(self.cexp[i])
        return -(tc * f * tk) if inverse else -(tk * f * tc)

    def antipode(self, x, inverse=False):
        """S_s (an anti-homomorphism), or its inverse."""
        alg = self.alg
        out = alg.element()
        for (w, s), c in x.terms.items():
            y = alg.one()
            for z in w:
                img = alg.element()
                for u, cu in self.expansion(z).items():
                    part = alg.one()
                    for letter in u:
                        part = self._s_simple(letter, inverse) * part
                    img = img + part * cu
                y = img * y
            out = out + alg.torus(tuple(-u for u in s)) * y * c
        return out

    def antipode_inverse(self, x):
        return self.antipode(x, inverse=True)

    # -- adjoint action ------------------------------------------------------------
    def adjoint(self, x, w):
        """Ad x(w) = S^-1(x_2) w x_1."""
        alg = self.alg
        out = alg.element()
        for (t1, t2), c in self.coproduct(x).terms.items():
            left = self.antipode_inverse(Element(alg, {t2: ONE}))
            out = out + left * w * Element(alg, {t1: c})
        return out

    def adm_defect(self, x, w, z):
        """Ad x(wz) - Ad x_2(w) Ad x_1(z)."""
        alg = self.alg
        out = self.adjoint(x, w * z)
        for (t1, t2), c in self.coproduct(x).terms.items():
            a = self.adjoint(Element(alg, {t2: ONE}), w)
            b = self.adjoint(Element(alg, {t1: ONE}), z)
            out = out - a * b * c
        return out

    # -- axioms -----------------------------------------------------------------------
    def coassociativity_defect(self, x):
        d = self.coproduct(x)
        left = d.map_factor(0, lambda t: self.coproduct_terms({t: ONE}))
        right = d.map_factor(1, lambda t: self.coproduct_terms({t: ONE}))
        return left - right

    def counit_defects(self, x):
        d = self.coproduct(x)
        alg = self.alg
        l = alg.element()
        r = alg.element()
        for (t1, t2), c in d.terms.items():
            e1 = self.counit(Element(alg, {t1: ONE}))
            e2 = self.counit(Element(alg, {t2: ONE}))
            if e1:
                l = l + Element(alg, {t2: c * e1})
            if e2:
                r = r + Element(alg, {t1: c * e2})
        return l - x, r - x

    def antipode_defects(self, x):
        """m(S x id)Delta(x) - eps(x) and m(id x S)Delta(x) - eps(x)."""
        alg = self.alg
        d = self.coproduct(x)
        a = alg.element()
        b = alg.element()
        for (t1, t2), c in d.terms.items():
            x1 = Element(alg, {t1: ONE})
            x2 = Element(alg, {t2: ONE})
            a = a + self.antipode(x1) * x2 * c
            b = b + x1 * self.antipode(x2) * c
        eps = alg.scalar(self.counit(x))
        return a - eps, b - eps

    # -- coideal ----------------------------------------------------------------------
    def coideal_membership(self, x):
        """Delta_s(x) in U(m_+) (x) U(b_+), with x expanded in PBW terms."""
        R = self.S.R
        if not R.simple_flag:
            raise HypothesisError("gamma_1..gamma_n are not simple")
        mset = {self.S.pos[tuple(b)] for b in R.m_plus}
        D = self.S.D
        for (t1, t2), c in self.coproduct(x).terms.items():
            w1, s1 = t1
            w2, _ = t2
            if any(s1) or any(z not in mset for z in w1):
                return False
            if any(z >= D for z in w2):
                return False
        return True

    def cm1_residue(self, k):
        """Delta_s(e_k) minus the two named terms of the coideal formula."""
        R = self.S.R
        alg = self.alg
        beta = self.S.ordering[k]
        ex = R.torus_exponent([x + y for x, y in zip(beta, R.cayley_apply(beta))])
        e = alg.e(k)
        return self.coproduct(e) - Tensor.pure(e, alg.torus(ex)) - Tensor.pure(alg.one(), e)

    def cm1_report(self, k):
        """Which root positions, torus parts and f letters the residue uses."""
        D = self.S.D
        lefts, left_torus, right_f = set(), False, False
        for (t1, t2) in self.cm1_residue(k).terms:
            lefts.update(t1[0])
            left_torus = left_torus or any(t1[1])
            right_f = right_f or any(z >= D for z in t2[0])
        return {"left_letters": sorted(lefts), "left_torus": left_torus,
                "right_has_f": right_f}

    def cm1_check(self, k, side="after"):
        """
        The residue lies in (e-monomials of m_+ roots strictly on one side of
        beta_k) (x) (e/t-span).  With these root vectors and this coproduct the
        correction terms sit after beta_k; side="before" tests the mirror.
        """
        R = self.S.R
        if not R.simple_flag:
            raise HypothesisError("gamma_1..gamma_n are not simple")
        mset = {self.S.pos[tuple(b)] for b in R.m_plus}
        rep = self.cm1_report(k)
        ok_side = (lambda z: z > k) if side == "after" else (lambda z: z < k)
        return (not rep["left_torus"] and not rep["right_has_f"]
                and all(z in mset and ok_side(z) for z in rep["left_letters"]))
