"""
The standard quantum group in word form.

U^+ is embedded in the quantum shuffle algebra, which is injective at
generic q; for each weight we pick a basis of words greedily, and any word
in the generators is rewritten to that basis by linear algebra.  U^- uses
the same bases (X_i^+ -> X_i^- is an algebra isomorphism U^+ -> U^-).

An element is a dict {(e_word, s, f_word): QV} meaning X_e t^s X^-_f, with
t_i X_j^+ t_i^-1 = v^(a_ij) X_j^+ and K_i = t_i^(2d d_i).  Cross terms are
normal-ordered with X_j^- X_i^+ = X_i^+ X_j^- - delta_ij [K_i].

This is the reference engine: it knows only the defining relations, so it
doubles as the oracle for the PBW rewriting engine.
"""

from __future__ import annotations

from functools import lru_cache

from .coeff import ONE, SubscriptedQ, qfactorial, vpow
from .linalg import Echelon


def add_into(acc, key, c):
    if not c:
        return
    x = acc.get(key)
    if x is None:
        acc[key] = c
    else:
        y = x + c
        if y:
            acc[key] = y
        else:
            del acc[key]


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vec_neg(a):
    return tuple(-x for x in a)


class WordAlgebra:
    """Standard U_q(g) over Q(v) with v^(2d) = q."""

    def __init__(self, rs, d):
        self.rs = rs
        self.d = d
        self.l = rs.rank
        self.zero_s = (0,) * self.l
        self._phi = {(): {(): ONE}}
        self._bases = {}
        self._coords = {}
        self._fe_cache = {}
        self._braid_cache = {}

    # -- small helpers ------------------------------------------------------
    def sub(self, i):
        return SubscriptedQ(self.rs.d[i], self.d)

    def q_pow(self, k):
        """q^k as a power of v (k may be rational with denominator dividing 2d)."""
        e = 2 * self.d * k
        if int(e) != e:
            raise ValueError(f"q^{k} is not an integral power of v for d={self.d}")
        return vpow(int(e))

    def weight(self, word):
        w = [0] * self.l
        for i in word:
            w[i] += 1
        return tuple(w)

    def pair_s(self, s, beta):
        """<s, beta> with t^s X_beta t^-s = v^<s,beta> X_beta."""
        a = self.rs.cartan
        return sum(s[i] * sum(a[i][j] * beta[j] for j in range(self.l))
                   for i in range(self.l) if s[i])

    def k_vec(self, i, power=1):
        """t-exponent of K_i^power."""
        return tuple(2 * self.d * self.rs.d[i] * power if j == i else 0 for j in range(self.l))

    # -- quantum shuffle ----------------------------------------------------
    @lru_cache(maxsize=None)
    def _shuffle_letter(self, u, b):
        """u * (b) in the shuffle algebra, as a dict word -> QV."""
        if not u:
            return {(b,): ONE}
        out = {}
        for w, c in self._shuffle_letter(u[:-1], b).items():
            add_into(out, w + (u[-1],), c)
        wt = self.weight(u)
        e = -2 * self.d * sum(wt[k] * self.rs.form[k][b] for k in range(self.l))
        add_into(out, u + (b,), vpow(e))
        return out

    def phi(self, word):
        """Image of X_word in the shuffle algebra."""
        word = tuple(word)
        got = self._phi.get(word)
        if got is not None:
            return got
        prev = self.phi(word[:-1])
        out = {}
        b = word[-1]
        for u, c in prev.items():
            for w, x in self._shuffle_letter(u, b).items():
                add_into(out, w, c * x)
        self._phi[word] = out
        return out

    def _words_of_weight(self, mu):
        out = []

        def rec(prefix, rem):
            if not any(rem):
                out.append(tuple(prefix))
                return
            for i in range(self.l):
                if rem[i]:
                    rem[i] -= 1
                    prefix.append(i)
                    rec(prefix, rem)
                    prefix.pop()
                    rem[i] += 1

        rec([], list(mu))
        return out

    def basis(self, mu):
        """Greedy lex basis of U^+_mu by words, with its echelon form."""
        mu = tuple(mu)
        got = self._bases.get(mu)
        if got is not None:
            return got
        ech = Echelon()
        words = []
        for w in self._words_of_weight(mu):
            if ech.add(self.phi(w), {w: ONE}):
                words.append(w)
        self._bases[mu] = (words, ech)
        return words, ech

    def coords(self, word):
        """X_word as a combination of basis words of its weight."""
        word = tuple(word)
        got = self._coords.get(word)
        if got is not None:
            return got
        words, ech = self.basis(self.weight(word))
        if word in words:
            out = {word: ONE}
        else:
            res, tag = ech.reduce(self.phi(word), {})
            if res:
                raise AssertionError("shuffle basis does not span")
            out = {w: -c for w, c in tag.items()}
        self._coords[word] = out
        return out

    def dim(self, mu):
        return len(self.basis(mu)[0])

    # -- elements -----------------------------------------------------------
    def gen_e(self, i):
        return {((i,), self.zero_s, ()): ONE}

    def gen_f(self, i):
        return {((), self.zero_s, (i,)): ONE}

    def torus(self, s, c=ONE):
        return {((), tuple(s), ()): c}

    def one(self):
        return self.torus(self.zero_s)

    def normalize(self, raw):
        """Rewrite arbitrary e/f words to basis words."""
        out = {}
        for (ew, s, fw), c in raw.items():
            for be, ce in self.coords(ew).items():
                for bf, cf in self.coords(fw).items():
                    add_into(out, (be, s, bf), c * ce * cf)
        return out

    def _fe(self, fw, ew):
        """X^-_fw X^+_ew as a dict {(e_word, s, f_word): QV} in arbitrary words."""
        if not fw or not ew:
            return {(ew, self.zero_s, fw): ONE}
        key = (fw, ew)
        got = self._fe_cache.get(key)
        if got is not None:
            return got
        out = {}
        j, i = fw[-1], ew[0]
        fw1, ew1 = fw[:-1], ew[1:]
        for (a, s, b), c in self._fe(fw1, (i,)).items():
            for (a2, s2, b2), c2 in self._fe(b + (j,), ew1).items():
                add_into(out, (a + a2, _vec_add(s, s2), b2),
                         c * c2 * vpow(self.pair_s(s, self.weight(a2))))
        if i == j:
            qi = self.sub(i).value
            den = (qi - qi.inverse()).inverse()
            wf = self.weight(fw1)
            for sign in (1, -1):
                kv = self.k_vec(i, sign)
                coef = -den * sign * vpow(self.pair_s(kv, wf))
                for (a, s, b), c in self._fe(fw1, ew1).items():
                    add_into(out, (a, _vec_add(kv, s), b),
                             coef * c * vpow(self.pair_s(kv, self.weight(a))))
        self._fe_cache[key] = out
        return out

    def mul(self, x, y):
        raw = {}
        for (e1, s1, f1), c1 in x.items():
            for (e2, s2, f2), c2 in y.items():
                for (a, sg, b), c in self._fe(f1, e2).items():
                    scal = vpow(self.pair_s(s1, self.weight(a)) + self.pair_s(s2, self.weight(b)))
                    add_into(raw, (e1 + a, _vec_add(_vec_add(s1, sg), s2), b + f2),
                             c1 * c2 * c * scal)
        return self.normalize(raw)

    def add(self, x, y, cy=ONE):
        out = dict(x)
        for k, c in y.items():
            add_into(out, k, c * cy)
        return out

    def scale(self, x, c):
        if not c:
            return {}
        return {k: v * c for k, v in x.items()}

    def prod(self, *xs):
        out = self.one()
        for x in xs:
            out = self.mul(out, x)
        return out

    def word_e(self, word):
        return self.normalize({(tuple(word), self.zero_s, ()): ONE})

    def word_f(self, word):
        return self.normalize({((), self.zero_s, tuple(word)): ONE})

    def power(self, x, n):
        out = self.one()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    # -- Lusztig braid automorphisms ---------------------------------------
    def divided_e(self, i, n):
        return self.scale(self.word_e((i,) * n), qfactorial(n, self.sub(i)).inverse())

    def divided_f(self, i, n):
        return self.scale(self.word_f((i,) * n), qfactorial(n, self.sub(i)).inverse())

    def braid_generator(self, i, kind, j):
        """T_i applied to X_j^+ ('e'), X_j^- ('f'), or t_j ('t')."""
        key = (i, kind, j)
        got = self._braid_cache.get(key)
        if got is not None:
            return got
        a = self.rs.cartan
        qi = self.sub(i).value
        if kind == "t":
            out = self.torus(self.braid_torus(i, tuple(int(k == j) for k in range(self.l))))
        elif kind == "e" and j == i:
            out = self.scale(self.mul(self.gen_f(i), self.torus(self.k_vec(i))), -ONE)
        elif kind == "f" and j == i:
            out = self.scale(self.mul(self.torus(self.k_vec(i, -1)), self.gen_e(i)), -ONE)
        else:
            m = -a[i][j]
            out = {}
            for r in range(m + 1):
                sign = ONE if (r + m) % 2 == 0 else -ONE
                if kind == "e":
                    term = self.prod(self.divided_e(i, m - r), self.gen_e(j), self.divided_e(i, r))
                    out = self.add(out, term, sign * qi ** (-r))
                else:
                    term = self.prod(self.divided_f(i, r), self.gen_f(j), self.divided_f(i, m - r))
                    out = self.add(out, term, sign * qi ** r)
        self._braid_cache[key] = out
        return out

    def braid_torus(self, i, s):
        """Exponent of T_i(t^s), from T_i(H_j) = H_j - a_ji H_i."""
        a = self.rs.cartan
        out = list(s)
        out[i] -= sum(s[k] * a[k][i] for k in range(self.l))
        return tuple(out)

    def braid(self, i, x):
        """Apply T_i to an element, letter by letter."""
        out = {}
        for (ew, s, fw), c in x.items():
            term = self.one()
            for j in ew:
                term = self.mul(term, self.braid_generator(i, "e", j))
            term = self.mul(term, self.torus(self.braid_torus(i, s)))
            for j in fw:
                term = self.mul(term, self.braid_generator(i, "f", j))
            out = self.add(out, term, c)
        return out

    def braid_word(self, word, x):
        for i in reversed(word):
            x = self.braid(i, x)
        return x
