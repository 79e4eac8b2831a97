"""
Small exact linear algebra over any field whose elements support the usual
operators and truthiness (Fraction, QV).

Dense routines take lists of rows.  The Echelon class keeps an incremental
basis of sparse vectors (dicts key -> coefficient).
"""

from __future__ import annotations

from fractions import Fraction


def identity(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = 0
            for k in range(m):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def transpose(a):
    return [list(r) for r in zip(*a)]


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if not hasattr(m[r][c], "inverse") else m[r][c].inverse()
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def kernel(rows, ncols=None, one=Fraction(1), zero=Fraction(0)):
    """Basis of the right null space {x : A x = 0}."""
    if not rows:
        n = ncols or 0
        return [[one if i == j else zero for i in range(n)] for j in range(n)]
    ncols = len(rows[0])
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for i, p in enumerate(piv):
            if red[i][f]:
                x[p] = -red[i][f]
        basis.append(x)
    return basis


def inverse(a, one=Fraction(1), zero=Fraction(0)):
    n = len(a)
    aug = [list(a[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def solve(a, b, one=Fraction(1), zero=Fraction(0)):
    """Solve A x = b for square invertible A."""
    inv = inverse(a, one, zero)
    return [sum((inv[i][j] * b[j] for j in range(len(b)) if inv[i][j] and b[j]), zero)
            for i in range(len(a))]


class Echelon:
    """
    Incremental row-echelon basis of sparse vectors.

    Keys are ordered by the order of first appearance as pivots; every
    stored vector has coefficient 1 at its pivot and the pivots of the
    other stored vectors absent (fully reduced).
    """

    def __init__(self):
        self.rows = {}      # pivot key -> vector (dict)
        self.tags = {}      # pivot key -> tag dict (combination of inputs)

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, tag=None):
        """Return (residual, tag-combination) of vec modulo the span."""
        vec = {k: c for k, c in vec.items() if c}
        tag = dict(tag) if tag is not None else None
        for p in [k for k in vec if k in self.rows]:
            c = vec.get(p)
            if not c:
                continue
            row = self.rows[p]
            for k, x in row.items():
                y = vec.get(k, 0) - c * x
                if y:
                    vec[k] = y
                else:
                    vec.pop(k, None)
            if tag is not None:
                for k, x in self.tags[p].items():
                    y = tag.get(k, 0) - c * x
                    if y:
                        tag[k] = y
                    else:
                        tag.pop(k, None)
        return vec, tag

    def add(self, vec, tag=None):
        """Insert vec; return True if it enlarged the span."""
        res, tg = self.reduce(vec, tag if tag is not None else {})
        if not res:
            return False
        p = min(res, key=_sort_key)
        inv = 1 / res[p] if not hasattr(res[p], "inverse") else res[p].inverse()
        res = {k: x * inv for k, x in res.items()}
        tg = {k: x * inv for k, x in tg.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, x in res.items():
                    y = row.get(k, 0) - c * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
                t = self.tags[q]
                for k, x in tg.items():
                    y = t.get(k, 0) - c * x
                    if y:
                        t[k] = y
                    else:
                        t.pop(k, None)
        self.rows[p] = res
        self.tags[p] = tg
        return True

    def contains(self, vec):
        return not self.reduce(vec)[0]


def _sort_key(k):
    return repr(k)
