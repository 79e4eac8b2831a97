"""
The limit v -> 1.

Two flavors are provided.

classical_limit sends an element of U_q^s(g) to U(g): with eps = v - 1 a
torus monomial is t^s = (1 + eps)^(s.H), where H_i are the coroots, so every
coefficient is expanded in eps and the order-0 part is kept.  The result is a
dict (r, hmono, t) -> Fraction, meaning E^r * H^hmono * F^t in the PBW basis
of U(g) given by the classical root vectors in the same ordering.

poisson_bracket works in the rescaled generators e~_b = (1 - q_b^-2) e_b,
f~_b = (1 - q_b^-2) e^{h b^vee} f_b and t-monomials, which commute at v = 1;
classical elements are dicts (r, s, t) -> Fraction read as commutative
monomials in those generators.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .coeff import ONE, QV, PoleError, vpow
from .pbw import Element, _vadd, _vsub
from .words import add_into


class NoClassicalLimit(ArithmeticError):
    pass


# -- polynomials in commuting H_1..H_l ------------------------------------------
def _pmul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            v = out.get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _padd(a, b, c=1):
    out = dict(a)
    for k, x in b.items():
        v = out.get(k, 0) + c * x
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _binom_linear(s, j):
    """binom(sum_i s_i H_i, j) as a polynomial in the H_i."""
    l = len(s)
    zero = (0,) * l
    lin = {tuple(int(k == i) for k in range(l)): Fraction(s[i]) for i in range(l) if s[i]}
    out = {zero: Fraction(1)}
    for m in range(j):
        out = _pmul(out, _padd(lin, {zero: Fraction(-m)}))
    return {k: v / factorial(j) for k, v in out.items()}


def classical_limit(x):
    """Order-0 part in eps = v - 1 of a twisted or standard element."""
    groups = {}
    for (r, s, t), c in x.public().items():
        groups.setdefault((r, t), []).append((s, c))
    out = {}
    for (r, t), items in sorted(groups.items()):
        pole = max(c.pole_order_at_one() for _, c in items)
        series = {}
        for s, c in items:
            k, coeffs = c.expansion_at_one(pole - c.pole_order_at_one())
            # coeffs[m] multiplies eps^(m - k)
            for m, a in enumerate(coeffs):
                if not a:
                    continue
                for j in range(0, pole - (m - k) + 1):
                    order = m - k + j
                    if order > 0:
                        break
                    series[order] = _padd(series.get(order, {}),
                                          {h: a * y for h, y in _binom_linear(s, j).items()})
        for order, poly in series.items():
            if order < 0 and poly:
                raise NoClassicalLimit(f"pole of order {-order} at v=1 in the (r,t)={(r, t)} part")
        for h, y in series.get(0, {}).items():
            out[(r, h, t)] = y
    return out


# -- rescaled generators and the Poisson bracket ------------------------------------
class Rescaled:
    """Coordinates of twisted elements in the e~, t, f~ monomial basis."""

    def __init__(self, session):
        self.S = session
        self.alg = session.alg
        self._lam = {}
        self.b = [session.R.coroot_exponent(beta) for beta in session.ordering]

    def scale(self, k):
        return ONE - self.S.q_beta(self.S.ordering[k]) ** -2

    def monomial(self, mono):
        """e~^r t^s f~^t as an element."""
        r, s, t = mono
        alg = self.alg
        D = self.S.D
        x = alg.torus(s)
        for k in reversed(range(D)):
            if r[k]:
                x = (alg.e(k) * self.scale(k)) ** r[k] * x
        for k in reversed(range(D)):
            if t[k]:
                ft = alg.torus(self.b[k]) * alg.f(k) * self.scale(k)
                x = x * ft ** t[k]
        return x

    def _shift(self, t):
        out = self.S.zero_s
        for k, m in enumerate(t):
            if m:
                out = _vadd(out, tuple(m * y for y in self.b[k]))
        return out

    def _mu(self, mono):
        """e~^r t^s f~^t = mu * e^r t^(s + shift) f^t."""
        got = self._lam.get(mono)
        if got is None:
            (key, got), = self.monomial(mono).public().items()
            assert key[1] == _vadd(mono[1], self._shift(mono[2]))
            self._lam[mono] = got
        return got

    def coords(self, x):
        """{(r, s, t): QV} with x = sum c * e~^r t^s f~^t."""
        out = {}
        for (r, s, t), c in x.public().items():
            mono = (r, _vsub(s, self._shift(t)), t)
            add_into(out, mono, c * self._mu(mono).inverse())
        return out

    def classical(self, x):
        """Value at v = 1 in the commutative quotient."""
        out = {}
        for mono, c in self.coords(x).items():
            try:
                y = c.specialize(1)
            except PoleError:
                raise NoClassicalLimit(f"coefficient {c} of {mono} has a pole at v=1")
            if y:
                out[mono] = y
        return out

    def lift(self, poly):
        """Constant-coefficient lift of a classical polynomial."""
        x = self.alg.element()
        for mono, c in sorted(poly.items()):
            x = x + self.monomial(mono) * QV(c)
        return x

    def bracket(self, x, y):
        """(1/2d) [x, y] / (v - 1) at v = 1."""
        if not isinstance(x, Element):
            x = self.lift(x)
        if not isinstance(y, Element):
            y = self.lift(y)
        com = x * y - y * x
        eps_inv = (vpow(1) - ONE).inverse()
        half = QV(Fraction(1, 2 * self.S.d))
        out = {}
        for mono, c in self.coords(com).items():
            try:
                c.specialize(1)
            except PoleError:
                raise NoClassicalLimit("commutator has a pole at v=1")
            if c.specialize(1) != 0:
                raise NoClassicalLimit(f"commutator does not vanish at v=1 on {mono}")
            val = (c * eps_inv * half).specialize(1)
            if val:
                out[mono] = val
        return out


def cmul(a, b):
    """Product of classical polynomials (commutative monomials)."""
    out = {}
    for (r1, s1, t1), c1 in a.items():
        for (r2, s2, t2), c2 in b.items():
            k = (_vadd(r1, r2), _vadd(s1, s2), _vadd(t1, t2))
            v = out.get(k, 0) + c1 * c2
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def cadd(a, b, c=1):
    return _padd(a, b, c)
