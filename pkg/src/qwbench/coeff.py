"""
Exact arithmetic in Q(v), the field of rational functions in one variable.

Every quantum scalar lives here.  A realization session fixes an integer d
with q = v^(2d); q-integers for a root of squared length 2*d_i are taken at
q_i = v^(2d*d_i).  Elements are immutable and kept in a canonical reduced
form, so equality is structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from flint import fmpz_poly

_ONE_POLY = fmpz_poly([1])
_ZERO_POLY = fmpz_poly([])
_X_MINUS_ONE = fmpz_poly([-1, 1])


class PoleError(ArithmeticError):
    """Raised when a specialization hits a pole of the reduced fraction."""


def _strip_low(p):
    """Split p = x^k * p' with p'(0) != 0; return (p', k)."""
    cs = p.coeffs()
    k = 0
    while k < len(cs) and cs[k] == 0:
        k += 1
    if k == 0:
        return p, 0
    return fmpz_poly(cs[k:]), k


class QV:
    """
    An element v^shift * num(v)/den(v) of Q(v).

    Canonical form: num(0) != 0 and den(0) != 0, num and den coprime in
    Z[v], leading coefficient of den positive.  Zero is (0, 1, shift 0).
    """

    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, value=0):
        if isinstance(value, QV):
            self.num, self.den, self.shift = value.num, value.den, value.shift
        elif isinstance(value, int):
            self.num = fmpz_poly([value]) if value else _ZERO_POLY
            self.den = _ONE_POLY
            self.shift = 0
        elif isinstance(value, Fraction):
            self.num = fmpz_poly([value.numerator]) if value else _ZERO_POLY
            self.den = fmpz_poly([value.denominator])
            self.shift = 0
        else:
            raise TypeError(f"cannot build QV from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, num, den, shift):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj.shift = shift
        obj._hash = None
        return obj

    @classmethod
    def make(cls, num, den=None, shift=0):
        """Normalize v^shift * num/den given fmpz_poly num, den."""
        if num.is_zero():
            return ZERO
        if den is None or den.is_one():
            num, k = _strip_low(num)
            return cls._raw(num, _ONE_POLY, shift + k)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num, k1 = _strip_low(num)
        den, k2 = _strip_low(den)
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
        if den.leading_coefficient() < 0:
            num = -num
            den = -den
        return cls._raw(num, den, shift + k1 - k2)

    @classmethod
    def laurent(cls, terms):
        """Build from a mapping exponent -> integer coefficient."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo = min(terms)
        cs = [0] * (max(terms) - lo + 1)
        for e, c in terms.items():
            cs[e - lo] = c
        return cls._raw(fmpz_poly(cs), _ONE_POLY, lo)

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self):
        """True when the element is a Laurent polynomial in v."""
        return self.den.is_one()

    def is_one(self):
        return self.shift == 0 and self.den.is_one() and self.num.is_one()

    def is_constant(self):
        return self.shift == 0 and self.num.degree() <= 0 and self.den.degree() <= 0

    def as_fraction(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        if self.num.is_zero():
            return Fraction(0)
        return Fraction(int(self.num[0]), int(self.den[0]))

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        if self.num.is_zero():
            return self
        return QV._raw(-self.num, self.den, self.shift)

    def __add__(self, other):
        if not isinstance(other, QV):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        a, b = self, other
        m = min(a.shift, b.shift)
        na = a.num if a.shift == m else a.num.left_shift(a.shift - m)
        nb = b.num if b.shift == m else b.num.left_shift(b.shift - m)
        if a.den == b.den:
            return QV.make(na + nb, a.den, m)
        return QV.make(na * b.den + nb * a.den, a.den * b.den, m)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, QV):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QV):
            if isinstance(other, int):
                if other == 0:
                    return ZERO
                if other == 1:
                    return self
                return QV._raw(self.num * other, self.den, self.shift) if self.den.is_one() \
                    else QV.make(self.num * other, self.den, self.shift)
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return QV._raw(self.num * other.num, _ONE_POLY, self.shift + other.shift)
        return QV.make(self.num * other.num, self.den * other.den, self.shift + other.shift)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(v)")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        if den.is_one():
            return QV._raw(num, _ONE_POLY, -self.shift)
        return QV._raw(num, den, -self.shift)

    def __truediv__(self, other):
        if not isinstance(other, QV):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self.den.is_one():
            return QV._raw(self.num ** n, _ONE_POLY, self.shift * n)
        return QV._raw(self.num ** n, self.den ** n, self.shift * n)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, QV):
            other = _coerce(other)
            if other is NotImplemented:
                return False
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shift, tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # -- analysis ---------------------------------------------------------
    def specialize(self, value):
        """Evaluate at a nonzero rational value of v."""
        value = Fraction(value)
        if value == 0:
            raise ValueError("specialization point must be nonzero")
        den = _horner(self.den, value)
        if den == 0:
            raise PoleError(f"{self} has a pole at v = {value}")
        return _horner(self.num, value) / den * value ** self.shift

    def pole_order_at_one(self):
        """Multiplicity of v = 1 as a root of the reduced denominator."""
        k = 0
        den = self.den
        while not den.is_zero() and _horner(den, Fraction(1)) == 0:
            den = den // _X_MINUS_ONE
            k += 1
        return k

    def derivative(self):
        """d/dv of the element."""
        n, d, s = self.num, self.den, self.shift
        if n.is_zero():
            return ZERO
        x = fmpz_poly([0, 1])
        top = n * d * s + x * (n.derivative() * d - n * d.derivative())
        return QV.make(top, d * d, s - 1)

    def expansion_at_one(self, order):
        """
        Coefficients a_{-k}, ..., a_{order} of the Laurent expansion in (v-1),
        where k is the pole order.  Returned as (k, [Fraction, ...]).
        """
        k = self.pole_order_at_one()
        y = self * (QV.make(_X_MINUS_ONE) ** k)
        out = []
        fact = 1
        for j in range(order + k + 1):
            if j:
                fact *= j
            out.append(y.specialize(1) / fact)
            y = y.derivative()
        return k, out

    # -- text -------------------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"QV({render(self)!r})"


def _horner(p, x):
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * x + int(c)
    return acc


def _coerce(x):
    if isinstance(x, QV):
        return x
    if isinstance(x, (int, Fraction)):
        return QV(x)
    return NotImplemented


ZERO = QV._raw(_ZERO_POLY, _ONE_POLY, 0)
ONE = QV._raw(_ONE_POLY, _ONE_POLY, 0)


def qv(x):
    """Coerce an int, Fraction or QV to QV."""
    out = _coerce(x)
    if out is NotImplemented:
        raise TypeError(f"cannot coerce {x!r} to QV")
    return out


@lru_cache(maxsize=None)
def vpow(k):
    """The monomial v^k."""
    return QV._raw(_ONE_POLY, _ONE_POLY, k)


V = vpow(1)


class SubscriptedQ:
    """q_i = v^(2d*d_i) for a root-length index d_i in a session with exponent d."""

    __slots__ = ("di", "d")

    def __init__(self, di, d):
        if di < 1 or d < 1:
            raise ValueError("root-length index and d must be positive")
        self.di = di
        self.d = d

    @property
    def exponent(self):
        """Power of v equal to q_i."""
        return 2 * self.d * self.di

    @property
    def value(self):
        return vpow(self.exponent)

    def __repr__(self):
        return f"SubscriptedQ(di={self.di}, d={self.d})"


@lru_cache(maxsize=None)
def _qint(n, e):
    if n == 0:
        return ZERO
    if n < 0:
        return -_qint(-n, e)
    return QV.laurent({e * (n - 1 - 2 * k): 1 for k in range(n)})


def qint(n, sub):
    """[n]_{q_i} = (q_i^n - q_i^-n)/(q_i - q_i^-1); odd in n."""
    return _qint(n, sub.exponent)


@lru_cache(maxsize=None)
def _qfact(n, e):
    out = ONE
    for k in range(1, n + 1):
        out = out * _qint(k, e)
    return out


def qfactorial(n, sub):
    """[n]_{q_i}! for n >= 0."""
    if n < 0:
        raise ValueError(f"q-factorial of negative integer {n}")
    return _qfact(n, sub.exponent)


def qbinom(m, n, sub):
    """Gaussian binomial [m choose n]_{q_i} for 0 <= n <= m."""
    if not 0 <= n <= m:
        raise ValueError(f"q-binomial out of range: ({m}, {n})")
    e = sub.exponent
    return _qfact(m, e) / (_qfact(n, e) * _qfact(m - n, e))


def specialize(x, value):
    return qv(x).specialize(value)


# -- canonical text ----------------------------------------------------------

def _render_laurent(poly, shift):
    terms = []
    for k, c in enumerate(poly.coeffs()):
        c = int(c)
        if c:
            terms.append((k + shift, c))
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms, reverse=True):
        if e == 0:
            mono = str(abs(c))
        else:
            v = "v" if e == 1 else f"v^{e}"
            mono = v if abs(c) == 1 else f"{abs(c)}*{v}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, mono))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        out += f" {sign} {mono}"
    return out


def render(x):
    """Canonical text: a Laurent polynomial, or '(P)/(Q)' with Q a polynomial."""
    num = _render_laurent(x.num, x.shift)
    if x.den.is_one():
        return num
    return f"({num})/({_render_laurent(x.den, 0)})"


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?(v(?:\s*\^\s*(-?\d+))?)?\s*")


def _parse_laurent(text):
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    pos = 0
    terms = {}
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at column {pos + 1}")
        sign, coef, var, exp = m.groups()
        if not first and sign is None:
            raise ValueError(f"missing operator in {text!r} at column {pos + 1}")
        if coef is None and var is None:
            raise ValueError(f"empty term in {text!r} at column {pos + 1}")
        c = int(coef) if coef is not None else 1
        if sign == "-":
            c = -c
        e = 0 if var is None else (int(exp) if exp is not None else 1)
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
        first = False
    return QV.laurent(terms)


def parse(text):
    """Inverse of render; also accepts any sum of integer multiples of v^k."""
    text = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", text)
    if m:
        return _parse_laurent(m.group(1)) / _parse_laurent(m.group(2))
    return _parse_laurent(text)
