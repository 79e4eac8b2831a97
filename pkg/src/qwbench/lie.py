"""
Root systems, Weyl groups, reduced words and normal orderings.

Roots are integer tuples in the simple-root basis.  The Cartan matrix is
a_ij = <alpha_j, alpha_i^vee>, so s_i(alpha_j) = alpha_j - a_ij alpha_i and
the invariant form is (alpha_i, alpha_j) = d_i a_ij.
"""

from __future__ import annotations

from functools import lru_cache

SUPPORTED = {
    "A": (1, 2, 3, 4),
    "B": (2, 3, 4),
    "C": (2, 3, 4),
    "D": (4,),
    "G": (2,),
}


class UnsupportedRootSystem(ValueError):
    pass


def _cartan(kind, n):
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if kind == "A":
        d = [1] * n
    elif kind == "B":
        a[n - 1][n - 2] = -2
        d = [2] * (n - 1) + [1]
    elif kind == "C":
        a[n - 2][n - 1] = -2
        d = [1] * (n - 1) + [2]
    elif kind == "D":
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n - 2):
            a[i][i + 1] = a[i + 1][i] = -1
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        d = [1] * n
    elif kind == "G":
        a = [[2, -3], [-1, 2]]
        d = [1, 3]
    return a, d


class WeylElement:
    """A Weyl group element, identified by its matrix on simple-root coordinates."""

    __slots__ = ("rs", "mat", "_key")

    def __init__(self, rs, mat):
        self.rs = rs
        self.mat = tuple(tuple(r) for r in mat)
        self._key = self.mat

    def __mul__(self, other):
        n = self.rs.rank
        m = [[sum(self.mat[i][k] * other.mat[k][j] for k in range(n)) for j in range(n)]
             for i in range(n)]
        return WeylElement(self.rs, m)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def act(self, vec):
        n = self.rs.rank
        return tuple(sum(self.mat[i][j] * vec[j] for j in range(n)) for i in range(n))

    def inverse(self):
        return self.rs.element(tuple(reversed(self.word())))

    def length(self):
        return len(self.rs.delta(self))

    def word(self):
        """Lexicographically least reduced word."""
        return self.rs.canonical_word(self)

    def __repr__(self):
        return f"W{tuple(i + 1 for i in self.word())}"


class RootSystem:
    """Root data for a simple type of rank at most 4."""

    def __init__(self, kind, rank):
        kind = kind.upper()
        if kind not in SUPPORTED or rank not in SUPPORTED[kind]:
            raise UnsupportedRootSystem(f"unsupported root system {kind}{rank}")
        self.kind = kind
        self.rank = rank
        self.cartan, self.d = _cartan(kind, rank)
        n = rank
        self.form = [[self.d[i] * self.cartan[i][j] for j in range(n)] for i in range(n)]
        assert all(self.form[i][j] == self.form[j][i] for i in range(n) for j in range(n))
        self.simple = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
        self.positive = self._positive_roots()
        self.roots = self.positive + [tuple(-x for x in r) for r in self.positive]
        self._posset = set(self.positive)
        self._words = {}

    @property
    def label(self):
        return f"{self.kind}{self.rank}"

    @property
    def D(self):
        return len(self.positive)

    # -- roots ------------------------------------------------------------
    def reflect(self, i, vec):
        c = sum(vec[j] * self.cartan[i][j] for j in range(self.rank))
        return tuple(x - (c if k == i else 0) for k, x in enumerate(vec))

    def _positive_roots(self):
        found = list(self.simple)
        seen = set(found)
        frontier = list(found)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(self.rank):
                    s = self.reflect(i, r)
                    if all(x >= 0 for x in s) and s not in seen:
                        seen.add(s)
                        nxt.append(s)
            found.extend(nxt)
            frontier = nxt
        return sorted(found, key=lambda r: (sum(r), r))

    def is_root(self, vec):
        vec = tuple(vec)
        return vec in self._posset or tuple(-x for x in vec) in self._posset

    def is_positive(self, vec):
        return tuple(vec) in self._posset

    def height(self, vec):
        return sum(vec)

    def pair(self, x, y):
        """Invariant form (x, y) on simple-root coordinates (rationals allowed)."""
        n = self.rank
        return sum(x[i] * self.form[i][j] * y[j] for i in range(n) for j in range(n))

    def root_length_index(self, beta):
        """d_beta = (beta, beta)/2, so that q_beta = q^(d_beta)."""
        return self.pair(beta, beta) // 2

    def coroot_pairing(self, lam, i):
        """<lam, alpha_i^vee> for lam in simple-root coordinates."""
        return sum(lam[j] * self.cartan[i][j] for j in range(self.rank))

    # -- Weyl group -------------------------------------------------------
    def element(self, word):
        """Weyl element of a word of 0-based simple-reflection indices."""
        n = self.rank
        m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        out = WeylElement(self, m)
        for i in word:
            out = out * self.simple_reflection(i)
        return out

    @lru_cache(maxsize=None)
    def simple_reflection(self, i):
        n = self.rank
        cols = [self.reflect(i, self.simple[j]) for j in range(n)]
        return WeylElement(self, [[cols[j][k] for j in range(n)] for k in range(n)])

    def identity(self):
        return self.element(())

    def delta(self, w):
        """Positive roots sent to negative roots by w."""
        return [b for b in self.positive if not self.is_positive(w.act(b))]

    def length(self, w):
        return len(self.delta(w))

    def longest(self):
        if getattr(self, "_w0", None) is not None:
            return self._w0
        w = self.identity()
        while True:
            for i in range(self.rank):
                s = w * self.simple_reflection(i)
                if s.length() > w.length():
                    w = s
                    break
            else:
                self._w0 = w
                return w

    def left_descent(self, w, i):
        return (self.simple_reflection(i) * w).length() < w.length()

    def canonical_word(self, w):
        word = []
        while True:
            ln = w.length()
            if ln == 0:
                return tuple(word)
            for i in range(self.rank):
                s = self.simple_reflection(i) * w
                if s.length() < ln:
                    word.append(i)
                    w = s
                    break

    def reduced_words(self, w):
        """All reduced words of w (tuples of 0-based indices), sorted."""
        key = w
        if key in self._words:
            return self._words[key]
        ln = w.length()
        if ln == 0:
            out = [()]
        else:
            out = []
            for i in range(self.rank):
                s = self.simple_reflection(i) * w
                if s.length() < ln:
                    out.extend((i,) + rest for rest in self.reduced_words(s))
        out.sort()
        self._words[key] = out
        return out

    def all_reduced_words_w0(self):
        return self.reduced_words(self.longest())

    def elements(self):
        """All Weyl group elements, sorted by (length, canonical word)."""
        seen = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(self.rank):
                    s = w * self.simple_reflection(i)
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return sorted(seen, key=lambda w: (w.length(), w.word()))

    def is_reduced(self, word):
        return self.element(word).length() == len(word)

    def coxeter_word(self):
        return tuple(range(self.rank))

    # -- normal orderings -------------------------------------------------
    def ordering_from_word(self, word):
        """beta_k = s_{i1}...s_{i(k-1)} alpha_{ik} for a reduced word of w0."""
        word = tuple(word)
        if len(word) != self.D or not self.is_reduced(word):
            raise ValueError(f"{tuple(i + 1 for i in word)} is not a reduced word of w0")
        out = []
        prefix = self.identity()
        for i in word:
            out.append(prefix.act(self.simple[i]))
            prefix = prefix * self.simple_reflection(i)
        return out

    def is_normal_ordering(self, order):
        pos = {tuple(b): k for k, b in enumerate(order)}
        if sorted(pos) != sorted(self.positive):
            return False
        for a in order:
            for b in order:
                c = tuple(x + y for x, y in zip(a, b))
                if c in pos:
                    lo, hi = sorted((pos[tuple(a)], pos[tuple(b)]))
                    if not lo < pos[c] < hi:
                        return False
        return True

    def dump(self):
        """Plain-data summary used in reports and golden tests."""
        return {
            "type": self.label,
            "cartan": self.cartan,
            "d": self.d,
            "D": self.D,
            "positive_roots": [list(r) for r in self.positive],
            "heights": [sum(r) for r in self.positive],
            "form": self.form,
        }
