"""
PBW normal forms by rewriting.

Letters are root vectors: e_k = k and f_k = D + k for the k-th root of the
normal ordering.  Torus monomials t^s are carried separately.  A
RewriteAlgebra holds one rule per out-of-order letter pair; normal forms are
computed by inserting letters one at a time from the right.

Three letter orders are supported:
  "left":            e_1 .. e_D  t  f_D .. f_1   (monomials e^r t^s f^t)
  "right":           f_D .. f_1  t  e_D .. e_1   (monomials f^t t^s e^r)
  "right-ascending": f_D .. f_1  t  e_1 .. e_D
In the right orders the e-factors for the first (resp. last) roots of the
ordering sit at the right edge, which is what left-ideal reduction needs.

Internally a term is (word, sigma) meaning word * t^sigma with the torus on
the far right; the public monomial (r, s, t) puts the torus in the middle.
"""

from __future__ import annotations

from .coeff import ONE, QV, vpow, render
from .words import add_into


class DegreeBoundError(RuntimeError):
    pass


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


RIGHT_KEYS = {
    "right": lambda D: [D + (D - 1 - k) for k in range(D)] + [D - 1 - k for k in range(D)],
    "right-ascending": lambda D: [D + k for k in range(D)] + [D - 1 - k for k in range(D)],
}


class RewriteAlgebra:
    """Straightening against a table of pair rules."""

    def __init__(self, rs, ordering, rules, mode="left", degree_bound=12, name=""):
        self.rs = rs
        self.l = rs.rank
        self.ordering = [tuple(b) for b in ordering]
        self.D = len(ordering)
        self.rules = rules
        self.mode = mode
        self.degree_bound = degree_bound
        self.name = name
        self.zero_s = (0,) * self.l
        D = self.D
        if mode == "left":
            self.key = [k for k in range(D)] + [D + (D - 1 - k) for k in range(D)]
        elif mode in RIGHT_KEYS:
            self.key = RIGHT_KEYS[mode](D)
        else:
            raise ValueError(mode)
        self.wt = [self.ordering[k] for k in range(D)] + \
                  [tuple(-x for x in self.ordering[k]) for k in range(D)]
        self._ins = {}

    # -- basic data -----------------------------------------------------------
    def pair_s(self, s, beta):
        a = self.rs.cartan
        return sum(s[i] * sum(a[i][j] * beta[j] for j in range(self.l))
                   for i in range(self.l) if s[i])

    def word_weight(self, word):
        out = [0] * self.l
        for x in word:
            for i, y in enumerate(self.wt[x]):
                out[i] += y
        return tuple(out)

    def is_e(self, x):
        return x < self.D

    # -- normal form ----------------------------------------------------------
    def insert(self, w, x):
        """Normal form of (normal word w) * letter x, as {(word, sigma): c}."""
        if not w or self.key[w[-1]] <= self.key[x]:
            if len(w) + 1 > self.degree_bound:
                raise DegreeBoundError(
                    f"degree bound {self.degree_bound} exceeded in {self.name}")
            return {(w + (x,), self.zero_s): ONE}
        k = (w, x)
        got = self._ins.get(k)
        if got is not None:
            return got
        out = {}
        head = w[:-1]
        for c, u, sig in self.rules[(w[-1], x)]:
            state = {(head, self.zero_s): c}
            for y in u:
                state = self.append(state, y)
            for (w2, s2), c2 in state.items():
                add_into(out, (w2, _vadd(s2, sig)), c2)
        self._ins[k] = out
        return out

    def append(self, state, x):
        out = {}
        wx = self.wt[x]
        for (w, s), c in state.items():
            scal = vpow(self.pair_s(s, wx)) if any(s) else ONE
            for (w2, s2), c2 in self.insert(w, x).items():
                add_into(out, (w2, _vadd(s, s2)), c * c2 * scal)
        return out

    def nf_word(self, word, sigma=None, coef=ONE):
        """Normal form of an arbitrary letter word times t^sigma (torus right)."""
        state = {((), self.zero_s): coef}
        for x in word:
            state = self.append(state, x)
        if sigma is not None and any(sigma):
            state = {(w, _vadd(s, sigma)): c for (w, s), c in state.items()}
        return state

    def mul_terms(self, x, y):
        """Product of internal dicts."""
        out = {}
        for (w1, s1), c1 in x.items():
            for (w2, s2), c2 in y.items():
                scal = vpow(self.pair_s(s1, self.word_weight(w2))) if any(s1) else ONE
                state = {(w1, self.zero_s): c1 * c2 * scal}
                for z in w2:
                    state = self.append(state, z)
                for (w3, s3), c3 in state.items():
                    add_into(out, (w3, _vadd(_vadd(s3, s1), s2)), c3)
        return out

    # -- public monomials -------------------------------------------------------
    def split(self, word):
        r = [0] * self.D
        t = [0] * self.D
        for x in word:
            if x < self.D:
                r[x] += 1
            else:
                t[x - self.D] += 1
        return tuple(r), tuple(t)

    def join(self, r, t):
        es = [k for k in range(self.D) for _ in range(r[k])]
        fs = [self.D + k for k in range(self.D) for _ in range(t[k])]
        if self.mode == "left":
            return tuple(es + fs[::-1])
        if self.mode == "right-ascending":
            return tuple(fs[::-1] + es)
        return tuple(fs[::-1] + es[::-1])

    def _middle_factor(self, word, s):
        """v-power relating middle-torus to right-torus placement."""
        if not any(s):
            return 0
        after = [x for x in word if (x >= self.D) == (self.mode == "left")]
        return self.pair_s(s, self.word_weight(after))

    def to_public(self, terms):
        out = {}
        for (w, s), c in terms.items():
            r, t = self.split(w)
            out[(r, s, t)] = c * vpow(-self._middle_factor(w, s))
        return out

    def from_public(self, mono, c=ONE):
        r, s, t = mono
        w = self.join(r, t)
        return {(w, tuple(s)): c * vpow(self._middle_factor(w, tuple(s)))}

    # -- element construction -----------------------------------------------------
    def element(self, terms=None):
        return Element(self, terms or {})

    def one(self):
        return Element(self, {((), self.zero_s): ONE})

    def scalar(self, c):
        c = QV(c) if not isinstance(c, QV) else c
        return Element(self, {((), self.zero_s): c} if c else {})

    def torus(self, s, c=ONE):
        return Element(self, {((), tuple(s)): c})

    def e(self, k, power=1):
        return Element(self, self.nf_word((k,) * power))

    def f(self, k, power=1):
        return Element(self, self.nf_word((self.D + k,) * power))

    def monomial(self, r, s, t, c=ONE):
        return Element(self, self.from_public((tuple(r), tuple(s), tuple(t)), c))

    def from_word(self, word, sigma=None, coef=ONE):
        return Element(self, self.nf_word(tuple(word), sigma, coef))

    def convert(self, x):
        """Re-normalize an element of a sibling algebra (same letters) in this order."""
        out = {}
        for (w, s), c in x.terms.items():
            for (w2, s2), c2 in self.nf_word(w, s, c).items():
                add_into(out, (w2, s2), c2)
        return Element(self, out)

    # -- diagnostics --------------------------------------------------------------
    def confluence_check(self, letters=None):
        """
        Resolve every overlap a*b*c with (a,b) and (b,c) both out of order by
        the two possible first steps; return the list of failing triples.
        """
        letters = range(2 * self.D) if letters is None else letters
        bad = []
        for a in letters:
            for b in letters:
                if self.key[a] <= self.key[b]:
                    continue
                for c in letters:
                    if self.key[b] <= self.key[c]:
                        continue
                    left = {}
                    for cc, u, sig in self.rules[(a, b)]:
                        st = self.mul_terms(self.nf_word(u, sig, cc),
                                            {((c,), self.zero_s): ONE})
                        for k2, x in st.items():
                            add_into(left, k2, x)
                    right = {}
                    for cc, u, sig in self.rules[(b, c)]:
                        st = self.mul_terms({((a,), self.zero_s): cc},
                                            self.nf_word(u, sig))
                        for k2, x in st.items():
                            add_into(right, k2, x)
                    if left != right:
                        bad.append((a, b, c))
        return bad


class Element:
    """A finite combination of PBW monomials in a RewriteAlgebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    def copy(self):
        return Element(self.alg, dict(self.terms))

    def __add__(self, other):
        if not isinstance(other, Element):
            other = self.alg.scalar(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            add_into(out, k, c)
        return Element(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return Element(self.alg, self.alg.mul_terms(self.terms, other.terms))
        c = other if isinstance(other, QV) else QV(other)
        if not c:
            return Element(self.alg, {})
        return Element(self.alg, {k: x * c for k, x in self.terms.items()})

    def __rmul__(self, other):
        c = other if isinstance(other, QV) else QV(other)
        if not c:
            return Element(self.alg, {})
        return Element(self.alg, {k: c * x for k, x in self.terms.items()})

    def __pow__(self, n):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            other = self.alg.scalar(other)
        return self.terms == other.terms

    def __ne__(self, other):
        return not self == other

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def public(self):
        return self.alg.to_public(self.terms)

    def degree(self):
        return max((len(w) for w, _ in self.terms), default=0)

    def __str__(self):
        return render_element(self)

    __repr__ = __str__


def render_monomial(alg, mono):
    r, s, t = mono
    es = [f"e{k + 1}" + (f"^{r[k]}" if r[k] > 1 else "") for k in range(alg.D) if r[k]]
    fs = [f"f{k + 1}" + (f"^{t[k]}" if t[k] > 1 else "") for k in range(alg.D) if t[k]]
    if alg.mode == "left":
        fs = fs[::-1]
    elif alg.mode == "right":
        fs, es = fs[::-1], es[::-1]
    else:
        fs = fs[::-1]
    tor = ["t^(" + ",".join(str(x) for x in s) + ")"] if any(s) else []
    parts = es + tor + fs if alg.mode == "left" else fs + tor + es
    return "*".join(parts) if parts else "1"


def _mono_sort_key(mono):
    r, s, t = mono
    return (sum(r) + sum(t), r, t, s)


def render_element(x):
    """Canonical text: sorted monomials with their coefficients."""
    pub = x.public()
    if not pub:
        return "0"
    parts = []
    for mono in sorted(pub, key=_mono_sort_key):
        parts.append(f"({render(pub[mono])})*{render_monomial(x.alg, mono)}")
    return " + ".join(parts)
