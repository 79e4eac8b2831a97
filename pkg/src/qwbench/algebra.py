"""
A computation session for one Weyl element s: the standard quantum group and
its realization U_q^s(g) in PBW form, tied together by the isomorphism psi.

Root vectors X_beta^+- come from the braid action in the word engine.  The
standard straightening table is read off from products of root vectors in
the word engine, and the twisted table is obtained by transporting it through
psi, which is diagonal on PBW words:

    psi(e_k) = X_k^+ t^kappa_k,   psi(f_k) = t^-kappa_k X_k^-,

with t^kappa_k the t-monomial of e^{h K beta_k^vee}.  Since n_ij = c_ij/(2d_j),
for simple roots this is exactly X_i^+ prod_p L_p^{n_ip}.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import ONE, SubscriptedQ, qbinom, qfactorial, vpow
from .pbw import RIGHT_KEYS, Element, RewriteAlgebra, _vadd, _vsub
from .realization import RealizationError, realize, standard_realization
from .words import WordAlgebra, add_into
from .linalg import Echelon


class SupportViolation(AssertionError):
    pass


def _compositions(mu, roots):
    """All exponent vectors r with sum r_k roots[k] = mu."""
    out = []
    n = len(roots)

    def rec(k, rem, acc):
        if k == n:
            if not any(rem):
                out.append(tuple(acc))
            return
        b = roots[k]
        m = 0
        while True:
            r2 = tuple(x - m * y for x, y in zip(rem, b))
            if any(x < 0 for x in r2):
                break
            acc.append(m)
            rec(k + 1, r2, acc)
            acc.pop()
            m += 1

    rec(0, tuple(mu), [])
    return out


class Session:
    """Everything computed for a fixed realization and degree bound."""

    def __init__(self, realization, degree_bound=12):
        self.R = realization
        self.rs = realization.rs
        self.l = self.rs.rank
        self.d = realization.d
        self.degree_bound = degree_bound
        self.ordering = [tuple(b) for b in realization.ordering]
        self.D = len(self.ordering)
        self.word = tuple(realization.w0_word)
        self.W = WordAlgebra(self.rs, self.d)
        self.zero_s = (0,) * self.l
        self.pos = {b: k for k, b in enumerate(self.ordering)}
        self.simple_pos = [self.pos[a] for a in self.rs.simple]
        self._pbw_e = {}
        self._pbw_f = {}
        self._to_w = {}
        self._build_root_vectors()
        self.kappa = [realization.k_exponent(b) for b in self.ordering]
        self.std = RewriteAlgebra(self.rs, self.ordering, self._standard_rules(),
                                  "left", degree_bound, "standard")
        self.alg = RewriteAlgebra(self.rs, self.ordering, self._twisted_rules(),
                                  "left", degree_bound, "twisted")
        self._right = None

    @classmethod
    def build(cls, rs, word, w0_word=None, degree_bound=12, conjugator=None):
        return cls(realize(rs, word, conjugator=conjugator, w0_word=w0_word), degree_bound)

    @classmethod
    def standard(cls, rs, w0_word=None, degree_bound=12):
        return cls(standard_realization(rs, w0_word), degree_bound)

    # -- root vectors -------------------------------------------------------
    def _build_root_vectors(self):
        W = self.W
        self.Xp, self.Xm = [], []
        for k, i in enumerate(self.word):
            xp = W.braid_word(self.word[:k], W.gen_e(i))
            xm = W.braid_word(self.word[:k], W.gen_f(i))
            if any(s != self.zero_s or fw for (_, s, fw) in xp):
                raise AssertionError(f"X_{k + 1}^+ is not in U^+")
            if any(s != self.zero_s or ew for (ew, s, _) in xm):
                raise AssertionError(f"X_{k + 1}^- is not in U^-")
            self.Xp.append(xp)
            self.Xm.append(xm)
        for i, k in enumerate(self.simple_pos):
            if self.Xp[k] != W.gen_e(i) or self.Xm[k] != W.gen_f(i):
                raise AssertionError("root vector at a simple root is not the generator")

    def weight_of(self, r):
        out = [0] * self.l
        for k, m in enumerate(r):
            if m:
                for j, x in enumerate(self.ordering[k]):
                    out[j] += m * x
        return tuple(out)

    def _pbw_table(self, mu, sign):
        """Echelon of PBW products of weight mu, tagged by exponent vector."""
        cache = self._pbw_e if sign > 0 else self._pbw_f
        got = cache.get(mu)
        if got is not None:
            return got
        W = self.W
        ech = Echelon()
        for r in _compositions(mu, self.ordering):
            x = W.one()
            ks = range(self.D) if sign > 0 else reversed(range(self.D))
            for k in ks:
                if r[k]:
                    x = W.mul(x, W.power(self.Xp[k] if sign > 0 else self.Xm[k], r[k]))
            vec = {(ew if sign > 0 else fw): c for (ew, s, fw), c in x.items()}
            if not ech.add(vec, {r: ONE}):
                raise AssertionError(f"PBW monomials of weight {mu} are dependent")
        if len(ech) != W.dim(mu):
            raise AssertionError(f"PBW monomials do not span weight {mu}")
        cache[mu] = ech
        return ech

    def _pbw_coords(self, word, sign):
        if not word:
            return {(0,) * self.D: ONE}
        ech = self._pbw_table(self.W.weight(word), sign)
        res, tag = ech.reduce({word: ONE}, {})
        if res:
            raise AssertionError("word not in PBW span")
        return {r: -c for r, c in tag.items()}

    def from_words(self, x, alg=None):
        """Word-engine element to standard PBW element."""
        alg = alg or self.std
        out = {}
        for (ew, s, fw), c in x.items():
            ce = self._pbw_coords(ew, 1)
            cf = self._pbw_coords(fw, -1)
            for r, a in ce.items():
                for t, b in cf.items():
                    for key, y in alg.from_public((r, s, t), c * a * b).items():
                        add_into(out, key, y)
        return out

    def _word_image(self, word):
        got = self._to_w.get(word)
        if got is None:
            W = self.W
            got = W.one()
            for x in word:
                got = W.mul(got, self.Xp[x] if x < self.D else self.Xm[x - self.D])
            self._to_w[word] = got
        return got

    def to_words(self, terms):
        """Standard PBW internal terms to a word-engine element."""
        W = self.W
        out = {}
        for (w, s), c in terms.items():
            y = W.mul(self._word_image(w), W.torus(s))
            out = W.add(out, y, c)
        return out

    # -- straightening tables -------------------------------------------------
    def _pairs(self, alg_key):
        D = self.D
        for a in range(2 * D):
            for b in range(2 * D):
                if alg_key[a] > alg_key[b]:
                    yield a, b

    def _standard_rules(self):
        D = self.D
        key = [k for k in range(D)] + [D + (D - 1 - k) for k in range(D)]
        rules = {}
        for a, b in self._pairs(key):
            prod = self.W.mul(self._word_image((a,)), self._word_image((b,)))
            terms = self.from_words(prod, _Shape(self))
            rules[(a, b)] = [(c, w, s) for (w, s), c in sorted(terms.items())]
        return rules

    def tau(self, x):
        return self.kappa[x] if x < self.D else tuple(-y for y in self.kappa[x - self.D])

    def psi_exponent(self, word):
        """E(w) with psi(word) = v^E(w) * (same word) * t^(sum tau)."""
        e = 0
        D = self.D
        for a, x in enumerate(word):
            if x >= D:
                k = x - D
                e += self.W.pair_s(self.kappa[k], self.ordering[k])
            ta = self.tau(x)
            if any(ta):
                for y in word[a + 1:]:
                    e += self.W.pair_s(ta, self.std.wt[y])
        return e

    def tau_sum(self, word):
        out = self.zero_s
        for x in word:
            out = _vadd(out, self.tau(x))
        return out

    def _twisted_rules(self):
        rules = {}
        for (a, b), rule in self.std.rules.items():
            shift = _vadd(self.tau(a), self.tau(b))
            e0 = self.psi_exponent((a, b))
            new = []
            for c, u, s in rule:
                s2 = _vsub(_vadd(s, shift), self.tau_sum(u))
                new.append((c * vpow(e0 - self.psi_exponent(u)), u, s2))
            rules[(a, b)] = new
        return rules

    # -- psi ------------------------------------------------------------------
    def psi(self, x):
        """Twisted element -> standard element."""
        out = {}
        for (w, s), c in x.terms.items():
            add_into(out, (w, _vadd(s, self.tau_sum(w))), c * vpow(self.psi_exponent(w)))
        return Element(self.std, out)

    def psi_inverse(self, x):
        out = {}
        for (w, s), c in x.terms.items():
            add_into(out, (w, _vsub(s, self.tau_sum(w))), c * vpow(-self.psi_exponent(w)))
        return Element(self.alg, out)

    # -- right order ----------------------------------------------------------
    def right(self, which="twisted", mode="right"):
        """
        The algebra in f^t t^s e^r order, rules derived from the left table.
        mode "right" puts e_1 at the right edge, "right-ascending" puts e_D there.
        """
        if self._right is None:
            self._right = {}
        if (which, mode) not in self._right:
            left = self.alg if which == "twisted" else self.std
            self._right[(which, mode)] = RewriteAlgebra(
                self.rs, self.ordering, self._right_rules(left, RIGHT_KEYS[mode](self.D)), mode,
                self.degree_bound, f"{which}-{mode}")
        return self._right[(which, mode)]

    def _right_rules(self, left, key):
        rules = {}
        for a, b in self._pairs(key):
            if (a, b) in left.rules:
                rules[(a, b)] = left.rules[(a, b)]
                continue
            lead = None
            rest = []
            for c, u, s in left.rules[(b, a)]:
                if u == (a, b) and not any(s):
                    lead = c
                elif u == (a, b):
                    raise AssertionError("leading word repeats with a torus factor")
                else:
                    rest.append((c, u, s))
            if lead is None:
                raise AssertionError(f"no leading term in rule for {(b, a)}")
            inv = lead.inverse()
            rules[(a, b)] = [(inv, (b, a), self.zero_s)] + [(-c * inv, u, s) for c, u, s in rest]
        return rules

    # -- generators -----------------------------------------------------------
    def e(self, i):
        """Simple generator e_i of the twisted algebra."""
        return self.alg.e(self.simple_pos[i])

    def f(self, i):
        return self.alg.f(self.simple_pos[i])

    def t(self, s):
        return self.alg.torus(s)

    def K(self, i, power=1):
        return self.alg.torus(self.W.k_vec(i, power))

    def e_root(self, beta, alg=None):
        return (alg or self.alg).e(self.pos[tuple(beta)])

    def f_root(self, beta, alg=None):
        return (alg or self.alg).f(self.pos[tuple(beta)])

    def q(self, k):
        return self.W.q_pow(k)

    def sub(self, i):
        return SubscriptedQ(self.rs.d[i], self.d)

    def q_beta(self, beta):
        return SubscriptedQ(self.rs.root_length_index(beta), self.d).value

    def c_int(self, i, j):
        """q^c_ij as a v-power exponent."""
        x = self.R.c[i][j] * 2 * self.d
        if Fraction(x).denominator != 1:
            raise RealizationError("q^c_ij is not a v-power")
        return int(x)

    # -- word-engine cross checks ----------------------------------------------
    def std_from_words(self, x):
        return Element(self.std, self.from_words(x))

    def std_to_words(self, x):
        return self.to_words(x.terms)

    def twisted_via_words(self, x, y):
        """x*y for twisted elements computed through psi and the word engine."""
        a = self.to_words(self.psi(x).terms)
        b = self.to_words(self.psi(y).terms)
        return self.psi_inverse(self.std_from_words(self.W.mul(a, b)))

    # -- relations and gradings ------------------------------------------------

    def braid_apply(self, i, x):
        """T_i on an element of the standard algebra (same PBW ordering)."""
        y = self.W.braid(i, self.to_words(x.terms))
        return self.std_from_words(y)

    def serre_elements(self, kind="e", alg=None):
        """The q-Serre combinations, one per ordered pair i != j."""
        out = {}
        alg = alg or self.alg
        gen = self.e if kind == "e" else self.f
        if alg is self.std:
            gen = (lambda i: self.std.e(self.simple_pos[i])) if kind == "e" else \
                  (lambda i: self.std.f(self.simple_pos[i]))
        for i in range(self.l):
            for j in range(self.l):
                if i == j:
                    continue
                m = 1 - self.rs.cartan[i][j]
                c = 0 if alg is self.std else self.c_int(i, j)
                tot = alg.element()
                gi, gj = gen(i), gen(j)
                for r in range(m + 1):
                    coef = qbinom(m, r, self.sub(i)) * vpow(r * c)
                    if r % 2:
                        coef = -coef
                    tot = tot + (gi ** (m - r)) * gj * (gi ** r) * coef
                out[(i, j)] = tot
        return out

    def cross_relations(self):
        """
        e_i f_j - q^(c_ji) f_j e_i - delta_ij [K_i] for all i, j; every entry
        should vanish.  The exponent c_ji = -c_ij is the one compatible with
        psi (see the ledger note on the sign of the cross relation).
        """
        out = {}
        for i in range(self.l):
            qi = self.sub(i).value
            for j in range(self.l):
                x = self.e(i) * self.f(j) - self.f(j) * self.e(i) * vpow(self.c_int(j, i))
                if i == j:
                    x = x - (self.K(i) - self.K(i, -1)) * (qi - qi.inverse()).inverse()
                out[(i, j)] = x
        return out

    def ls_relation(self, a, b, twisted=False):
        """
        X_a X_b - q^((a,b)) X_b X_a for ordering positions a < b (twisted:
        e_a e_b - q^((a,b)+(Ca,b)) e_b e_a).  Returns the divided-power
        coefficients {k: C(k)} and raises SupportViolation when a monomial
        outside the open interval (a, b) appears.
        """
        if not a < b:
            raise ValueError("need a < b in the ordering")
        alg = self.alg if twisted else self.std
        al, be = self.ordering[a], self.ordering[b]
        ex = self.rs.pair(al, be)
        if twisted:
            ex = ex + self.rs.pair(self.R.cayley_apply(al), be)
        x = alg.e(a) * alg.e(b) - alg.e(b) * alg.e(a) * self.q(ex)
        out = {}
        for (r, s, t), c in x.public().items():
            if any(s) or any(t) or any(r[k] for k in range(self.D) if not a < k < b):
                raise SupportViolation(
                    f"LS support violated for ({a + 1},{b + 1}): monomial {(r, s, t)}")
            fact = ONE
            for k, m in enumerate(r):
                if m:
                    fact = fact * qfactorial(m, SubscriptedQ(
                        self.rs.root_length_index(self.ordering[k]), self.d))
            out[r] = c * fact
        return out

    def dk_degree(self, mono):
        r, s, t = mono
        ht = sum((r[k] + t[k]) * sum(self.ordering[k]) for k in range(self.D))
        return tuple(r) + tuple(reversed(t)) + (ht,)

    @staticmethod
    def dk_key(deg, order="revlex"):
        """Sort key for DK degrees; "revlex" compares from the last coordinate."""
        return tuple(reversed(deg)) if order == "revlex" else tuple(deg)

    def graded_check(self, alg=None, order="revlex"):
        """
        For every straightening rule: lower terms have strictly smaller DK
        degree than the leading swapped monomial, and the leading coefficient
        matches the semi-commutative relations.  Returns a list of failures.
        """
        alg = alg or self.alg
        D = self.D
        fails = []
        twisted = alg is self.alg

        def cay(al, be):
            return self.rs.pair(self.R.cayley_apply(al), be) if twisted else 0

        for (a, b), rule in sorted(alg.rules.items()):
            lead_word = (b, a)
            terms = alg.nf_word((a, b))
            pub = alg.to_public(terms)
            lead_mono = alg.to_public({(lead_word, self.zero_s): ONE})
            (lm, _), = lead_mono.items()
            c0 = pub.get(lm)
            if a < D and b < D:
                al, be = self.ordering[b], self.ordering[a]
                expect = self.q(-(self.rs.pair(al, be) + cay(al, be)))
            elif a >= D and b >= D:
                al, be = self.ordering[a - D], self.ordering[b - D]
                expect = self.q(self.rs.pair(al, be) + cay(al, be))
            else:
                al, be = self.ordering[b], self.ordering[a - D]
                expect = self.q(cay(al, be))
            if c0 != expect:
                fails.append(("lead", a, b, str(c0), str(expect)))
            top = self.dk_key(self.dk_degree(lm), order)
            for mono in pub:
                if mono != lm and not self.dk_key(self.dk_degree(mono), order) < top:
                    fails.append(("order", a, b, mono))
        return fails

    def root_vectors(self, twisted=True):
        alg = self.alg if twisted else self.std
        return [alg.e(k) for k in range(self.D)], [alg.f(k) for k in range(self.D)]

    def nplus_membership(self):
        """e_beta lies in the subalgebra generated by the e_i (checked via the word engine)."""
        ok = True
        for k in range(self.D):
            y = self.to_words(self.psi(self.alg.e(k)).terms)
            for (ew, s, fw), c in y.items():
                if fw or s != self.kappa[k]:
                    ok = False
            y = self.to_words(self.psi(self.alg.f(k)).terms)
            neg = tuple(-x for x in self.kappa[k])
            for (ew, s, fw), c in y.items():
                if ew or s != neg:
                    ok = False
        return ok


class _Shape:
    """Stand-in with the left-order public conversion, used before std exists."""

    def __init__(self, session):
        self._alg = RewriteAlgebra(session.rs, session.ordering, {}, "left")

    def from_public(self, mono, c=ONE):
        return self._alg.from_public(mono, c)
