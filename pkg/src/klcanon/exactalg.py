"""Exact arithmetic in Z[u, u^-1] and Q(u), plus dense linear algebra over Q(u).

Polynomial gcds are delegated to FLINT (``python-flint``); everything else is
plain Python.  Values are immutable.

>>> u = RationalFunction.u()
>>> (u + 1 / u).to_text()
'u^-1 + u'
>>> qint(3).to_text()
'u^-2 + 1 + u^2'
>>> (qint(2) * qint(3)) == qint(4) + qint(2)
True
>>> f = bar(u ** 2 + 3)
>>> f.to_text(), f.numerator_coefficients(), f.denominator_coefficients()
('u^-2 + 3', [1, 0, 3], [0, 0, 1])
>>> eval_at_zero(1 / RationalFunction.qint(2))
Fraction(0, 1)
>>> mu_leading(1 / RationalFunction.qint(2))
Fraction(1, 1)
"""

from __future__ import annotations

from dataclasses import dataclass
import re
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from flint import fmpq, fmpq_poly, fmpz, fmpz_poly

__all__ = [
    "LaurentPolynomial",
    "RationalFunction",
    "ExactMatrix",
    "InconsistentSystemError",
    "qint",
    "qfactorial",
    "bar",
    "eval_at_zero",
    "eval_at_infinity",
    "mu_leading",
    "solve_linear",
    "span_intersection",
    "nullspace",
    "rank",
    "parse_value",
]

_ZERO_POLY = fmpz_poly(0)
_ONE_POLY = fmpz_poly(1)


def _valuation(p) -> int:
    """Order of vanishing at u = 0 of a nonzero flint polynomial."""
    coeffs = p.coeffs()
    for i, c in enumerate(coeffs):
        if c != 0:
            return i
    raise ValueError("valuation of the zero polynomial")


def _reverse(p, degree: int):
    """Return u^degree * p(1/u) for a polynomial of degree <= ``degree``."""
    coeffs = p.coeffs()
    coeffs = coeffs + [0] * (degree + 1 - len(coeffs))
    return type(p)(coeffs[::-1])


def _is_monic_monomial(p: fmpz_poly) -> bool:
    return p.leading_coefficient() == 1 and p.coeffs().count(0) == p.degree()


# --------------------------------------------------------------------------
# Laurent polynomials
# --------------------------------------------------------------------------


class LaurentPolynomial:
    """An element of Q[u, u^-1] stored as ``u^shift * poly`` with poly(0) != 0.

    >>> p = LaurentPolynomial({-1: 1, 1: 1})
    >>> p.to_text(), p.bar() == p
    ('u^-1 + u', True)
    >>> (p * p).coefficients()
    {-2: Fraction(1, 1), 0: Fraction(2, 1), 2: Fraction(1, 1)}
    """

    __slots__ = ("_shift", "_poly")

    def __init__(self, coefficients: dict | None = None):
        coefficients = {e: c for e, c in (coefficients or {}).items() if c != 0}
        if not coefficients:
            self._shift, self._poly = 0, fmpq_poly(0)
            return
        lo, hi = min(coefficients), max(coefficients)
        coeffs = [0] * (hi - lo + 1)
        for e, c in coefficients.items():
            coeffs[e - lo] = fmpq(Fraction(c).numerator, Fraction(c).denominator)
        self._shift, self._poly = lo, fmpq_poly(coeffs)

    @classmethod
    def _raw(cls, shift: int, poly: fmpq_poly) -> "LaurentPolynomial":
        obj = cls.__new__(cls)
        if poly.is_zero():
            obj._shift, obj._poly = 0, fmpq_poly(0)
            return obj
        v = _valuation(poly)
        if v:
            poly = fmpq_poly(poly.coeffs()[v:])
        obj._shift, obj._poly = shift + v, poly
        return obj

    @classmethod
    def monomial(cls, e: int, c=1) -> "LaurentPolynomial":
        return cls({e: c})

    # -- inspection -------------------------------------------------------
    def coefficients(self) -> dict[int, Fraction]:
        out = {}
        for i, c in enumerate(self._poly.coeffs()):
            if c != 0:
                out[self._shift + i] = Fraction(int(c.p), int(c.q))
        return out

    def __getitem__(self, e: int) -> Fraction:
        return self.coefficients().get(e, Fraction(0))

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def min_exponent(self) -> int:
        return self._shift

    def max_exponent(self) -> int:
        return self._shift + self._poly.degree()

    def is_integral(self) -> bool:
        return self._poly.denom() == 1

    def bar(self) -> "LaurentPolynomial":
        if self.is_zero():
            return self
        d = self._poly.degree()
        return LaurentPolynomial._raw(-self._shift - d, _reverse(self._poly, d))

    def positive_part(self) -> "LaurentPolynomial":
        """Terms with strictly positive exponent."""
        return LaurentPolynomial({e: c for e, c in self.coefficients().items() if e > 0})

    def negative_part(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: c for e, c in self.coefficients().items() if e < 0})

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "LaurentPolynomial | None":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial({0: other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        s = min(self._shift, o._shift)
        p = self._poly.left_shift(self._shift - s) + o._poly.left_shift(o._shift - s)
        return LaurentPolynomial._raw(s, p)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw(self._shift, -self._poly)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LaurentPolynomial._raw(self._shift + o._shift, self._poly * o._poly)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial; use RationalFunction")
        out = LaurentPolynomial({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        return RationalFunction.from_laurent(self) / other

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / RationalFunction.from_laurent(self)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, RationalFunction):
                return RationalFunction.from_laurent(self) == other
            return NotImplemented
        return self._shift == o._shift and self._poly == o._poly

    def __hash__(self):
        return hash((self._shift, str(self._poly)))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"LaurentPolynomial({self.to_text()!r})"

    def to_text(self) -> str:
        return _laurent_text(self.coefficients())


def _term_text(e: int, c: Fraction) -> str:
    if e == 0:
        return str(c)
    mono = "u" if e == 1 else f"u^{e}"
    if c == 1:
        return mono
    return f"{c}*{mono}"


def _laurent_text(coeffs: dict) -> str:
    if not coeffs:
        return "0"
    parts = []
    for e in sorted(coeffs):
        c = Fraction(coeffs[e])
        if not parts:
            parts.append(("-" + _term_text(e, -c)) if c < 0 else _term_text(e, c))
        elif c < 0:
            parts.append(" - " + _term_text(e, -c))
        else:
            parts.append(" + " + _term_text(e, c))
    return "".join(parts)


def qint(k: int) -> LaurentPolynomial:
    """Quantum integer [k] = u^(k-1) + u^(k-3) + ... + u^(1-k).

    >>> qint(0).is_zero(), qint(1).to_text(), qint(2).to_text()
    (True, '1', 'u^-1 + u')
    """
    if k < 0:
        raise ValueError("qint expects k >= 0")
    return LaurentPolynomial({e: 1 for e in range(1 - k, k, 2)})


def qfactorial(k: int) -> LaurentPolynomial:
    out = LaurentPolynomial({0: 1})
    for j in range(1, k + 1):
        out = out * qint(j)
    return out


# --------------------------------------------------------------------------
# Rational functions
# --------------------------------------------------------------------------


class RationalFunction:
    """An element of Q(u) held as a reduced fraction of integer polynomials.

    Canonical form: numerator and denominator are polynomials in u with
    integer coefficients, jointly primitive, coprime, and the denominator has
    positive leading coefficient.  Equality is equality of canonical forms.

    >>> u = RationalFunction.u()
    >>> f = (u ** 2 - 1) / (u - 1)
    >>> f.to_text(), f.is_laurent()
    ('1 + u', True)
    >>> (RationalFunction(2) / 4).to_text()
    '(1)/(2)'
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        f = RationalFunction.coerce(value)
        self.num, self.den, self._hash = f.num, f.den, None

    # -- construction -----------------------------------------------------
    @classmethod
    def _canonical(cls, num: fmpz_poly, den: fmpz_poly) -> "RationalFunction":
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        obj = cls.__new__(cls)
        obj._hash = None
        if num.is_zero():
            obj.num, obj.den = _ZERO_POLY, _ONE_POLY
            return obj
        if den.degree() == 0 and den.leading_coefficient() == 1:
            obj.num, obj.den = num, den
            return obj
        g = num.gcd(den)
        if not g.is_one():
            num, den = num // g, den // g
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def _monomial_den(cls, num: fmpz_poly, k: int) -> "RationalFunction":
        """num / u^k without a general gcd (k may be negative)."""
        obj = cls.__new__(cls)
        obj._hash = None
        if num.is_zero():
            obj.num, obj.den = _ZERO_POLY, _ONE_POLY
            return obj
        if k <= 0:
            obj.num, obj.den = num.left_shift(-k) if k else num, _ONE_POLY
            return obj
        v = min(_valuation(num), k)
        if v:
            num, k = num.right_shift(v), k - v
        obj.num, obj.den = num, _ONE_POLY.left_shift(k)
        return obj

    @classmethod
    def coerce(cls, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, LaurentPolynomial):
            return cls.from_laurent(value)
        if isinstance(value, int):
            return cls._canonical(fmpz_poly(value), _ONE_POLY)
        if isinstance(value, Fraction):
            return cls._canonical(fmpz_poly(value.numerator), fmpz_poly(value.denominator))
        if isinstance(value, str):
            return parse_value(value)
        raise TypeError(f"cannot convert {type(value).__name__} to RationalFunction")

    @classmethod
    def from_laurent(cls, p: LaurentPolynomial) -> "RationalFunction":
        if p.is_zero():
            return cls._canonical(_ZERO_POLY, _ONE_POLY)
        q = p._poly
        num = fmpz_poly([int(c * q.denom()) for c in q.coeffs()])
        den = fmpz_poly(int(q.denom()))
        if p._shift >= 0:
            return cls._canonical(num.left_shift(p._shift), den)
        return cls._canonical(num, den.left_shift(-p._shift))

    @classmethod
    def u(cls) -> "RationalFunction":
        return cls._canonical(fmpz_poly([0, 1]), _ONE_POLY)

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "RationalFunction":
        return cls._monomial_den(fmpz_poly([c]), -e)

    @classmethod
    def qint(cls, k: int) -> "RationalFunction":
        return cls.from_laurent(qint(k))

    @classmethod
    def qfactorial(cls, k: int) -> "RationalFunction":
        return cls.from_laurent(qfactorial(k))

    # -- arithmetic -------------------------------------------------------
    def _den_shift(self) -> int | None:
        """k if the denominator is u^k, else None."""
        d = self.den
        if d.leading_coefficient() != 1:
            return None
        deg = d.degree()
        if deg == 0:
            return 0
        if _is_monic_monomial(d):
            return deg
        return None

    def __add__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero():
            return o
        if o.num.is_zero():
            return self
        if self.den == o.den:
            if self.den.is_one():
                return RationalFunction._canonical(self.num + o.num, _ONE_POLY)
            return RationalFunction._canonical(self.num + o.num, self.den)
        a, b = self._den_shift(), o._den_shift()
        if a is not None and b is not None:
            m = max(a, b)
            return RationalFunction._monomial_den(
                self.num.left_shift(m - a) + o.num.left_shift(m - b), m
            )
        return RationalFunction._canonical(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        obj = RationalFunction.__new__(RationalFunction)
        obj.num, obj.den, obj._hash = -self.num, self.den, None
        return obj

    def __sub__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return RationalFunction.coerce(other) + (-self)

    def __mul__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RationalFunction._canonical(_ZERO_POLY, _ONE_POLY)
        if self.den.is_one() and o.den.is_one():
            return RationalFunction._canonical(self.num * o.num, _ONE_POLY)
        a, b = self._den_shift(), o._den_shift()
        if a is not None and b is not None:
            return RationalFunction._monomial_den(self.num * o.num, a + b)
        return RationalFunction._canonical(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction.coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction._canonical(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction._canonical(_ONE_POLY, _ONE_POLY) / (self ** (-k))
        return RationalFunction._canonical(self.num ** k, self.den ** k)

    def __eq__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"RationalFunction({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    # -- structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        """True iff the value lies in A = Z[u, u^-1]."""
        return self._den_shift() is not None

    def to_laurent(self) -> LaurentPolynomial:
        k = self._den_shift()
        if k is None:
            raise ValueError(f"{self.to_text()} is not a Laurent polynomial")
        return LaurentPolynomial._raw(-k, fmpq_poly(self.num.coeffs() or [0]))

    def bar(self) -> "RationalFunction":
        if self.num.is_zero():
            return self
        dn, dd = self.num.degree(), self.den.degree()
        num = _reverse(self.num, dn).left_shift(dd)
        den = _reverse(self.den, dd).left_shift(dn)
        return RationalFunction._canonical(num, den)

    def is_bar_invariant(self) -> bool:
        return self.bar() == self

    def order_at_zero(self) -> int:
        if self.num.is_zero():
            raise ValueError("order of zero is undefined")
        return _valuation(self.num) - _valuation(self.den)

    def evaluate(self, a) -> Fraction:
        """Value at a rational point a (ZeroDivisionError at a pole)."""
        a = Fraction(a)
        x = fmpq(a.numerator, a.denominator)
        n = fmpq_poly(self.num.coeffs() or [0])(x)
        d = fmpq_poly(self.den.coeffs())(x)
        if d == 0:
            raise ZeroDivisionError("pole")
        v = n / d
        return Fraction(int(v.p), int(v.q))

    def complexity(self) -> int:
        return max(self.num.degree(), 0) + self.den.degree()

    def numerator_coefficients(self) -> list[int]:
        return [int(c) for c in self.num.coeffs()]

    def denominator_coefficients(self) -> list[int]:
        return [int(c) for c in self.den.coeffs()]

    # -- text -------------------------------------------------------------
    def to_text(self) -> str:
        if self.is_laurent():
            return self.to_laurent().to_text()
        n = {i: c for i, c in enumerate(self.numerator_coefficients()) if c}
        d = {i: c for i, c in enumerate(self.denominator_coefficients()) if c}
        return f"({_laurent_text(n)})/({_laurent_text(d)})"

    def pretty(self) -> str:
        """Render as a quotient of products of quantum integers when possible.

        >>> f = RationalFunction.qint(2) ** 2 / RationalFunction.qint(4)
        >>> f.pretty()
        '[2]^2/[4]'
        >>> (1 / RationalFunction.qint(2)).pretty(), RationalFunction(-3).pretty()
        ('1/[2]', '-3')
        >>> RationalFunction.qint(3).pretty(), (RationalFunction.u() / RationalFunction.qint(2)).pretty()
        ('[3]', 'u/[2]')
        """
        if self.is_zero():
            return "0"
        cover = _qint_cover(self.den)
        if cover is None:
            return self.to_text()
        # den = u^v * c * d1 with d1 dividing prod; rewrite as num*q / (c*prod) times u^-v
        v = _valuation(self.den)
        d0 = self.den.right_shift(v)
        content = fmpz_poly(int(d0.content()))
        prod = fmpz_poly(1)
        for k in cover:
            prod = prod * _phi(k)
        q, rem = divmod(prod, d0 // content)
        if not rem.is_zero():
            return self.to_text()
        fn, fd = _qint_factor(self.num * q), _qint_factor(content * prod)
        if fn is None or fd is None:
            return self.to_text()
        shift = fn[0] - v - fd[0]
        c = Fraction(fn[1], fd[1])
        kn, kd = fn[2], fd[2]
        top = _qint_product_text(c.numerator, kn)
        if shift:
            mono = "u" if shift == 1 else f"u^{shift}"
            top = mono if top == "1" else "-" + mono if top == "-1" else top + mono
        if not kd and c.denominator == 1:
            return top
        bottom = _qint_product_text(c.denominator, kd)
        if len(kd) + (c.denominator != 1) > 1:
            bottom = f"({bottom})"
        return f"{top}/{bottom}"


def _phi(k: int) -> fmpz_poly:
    """u^(k-1) [k] as an ordinary polynomial."""
    return fmpz_poly([1 if i % 2 == 0 else 0 for i in range(2 * k - 1)])


def _qint_cover(den: fmpz_poly) -> list[int] | None:
    """Quantum integers whose product is divisible by den (up to u and content)."""
    rest = den.right_shift(_valuation(den))
    rest = rest // fmpz_poly(int(rest.content()))
    ks: list[int] = []
    while rest.degree() > 0:
        exact = [k for k in range(2, rest.degree() // 2 + 2) if (rest % _phi(k)).is_zero()]
        if exact:
            best = max(exact)
        else:
            best, best_deg = None, 0
            for k in range(2, 2 * rest.degree() + 3):
                g = rest.gcd(_phi(k))
                if g.degree() > best_deg:
                    best, best_deg = k, g.degree()
            if best is None:
                return None
        rest = rest // rest.gcd(_phi(best))
        ks.append(best)
    return ks


def _qint_factor(p: fmpz_poly):
    """Write p = c * u^e * prod_k u^(k-1)[k]; return (e - sum(k-1)..., c, ks) or None.

    The first entry is the leftover power of u once every factor is written
    as a bar-invariant quantum integer.
    """
    v = _valuation(p)
    rest = p.right_shift(v)
    ks: list[int] = []
    while rest.degree() > 0:
        deg = rest.degree()
        if deg % 2:
            return None
        for k in range(deg // 2 + 1, 1, -1):
            q, r = divmod(rest, _phi(k))
            if r.is_zero():
                ks.append(k)
                rest = q
                break
        else:
            return None
    shift = v + sum(k - 1 for k in ks)
    return shift, int(rest.coeffs()[0]), sorted(ks)


def _qint_product_text(c: int, ks: list[int]) -> str:
    parts = []
    counts: dict[int, int] = {}
    for k in ks:
        counts[k] = counts.get(k, 0) + 1
    for k in sorted(counts):
        parts.append(f"[{k}]" if counts[k] == 1 else f"[{k}]^{counts[k]}")
    body = "".join(parts)
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}{body}"


# --------------------------------------------------------------------------
# Module-level operations
# --------------------------------------------------------------------------


def bar(f) -> RationalFunction | LaurentPolynomial:
    """The involution u -> u^-1."""
    if isinstance(f, LaurentPolynomial):
        return f.bar()
    return RationalFunction.coerce(f).bar()


def eval_at_zero(f) -> Fraction | None:
    """Limit of f as u -> 0, or None when f has a pole at 0."""
    f = RationalFunction.coerce(f)
    if f.is_zero():
        return Fraction(0)
    vn, vd = _valuation(f.num), _valuation(f.den)
    if vn < vd:
        return None
    if vn > vd:
        return Fraction(0)
    return Fraction(int(f.num.coeffs()[vn]), int(f.den.coeffs()[vd]))


def eval_at_infinity(f) -> Fraction | None:
    return eval_at_zero(bar(RationalFunction.coerce(f)))


def mu_leading(f) -> Fraction:
    """Coefficient of u^1 in the power series of f at u = 0.

    >>> u = RationalFunction.u()
    >>> mu_leading(u / RationalFunction.qint(3)), mu_leading(RationalFunction(5))
    (Fraction(0, 1), Fraction(0, 1))
    """
    f = RationalFunction.coerce(f)
    if f.is_zero():
        return Fraction(0)
    n, d = f.num.coeffs(), f.den.coeffs()
    vn, vd = _valuation(f.num), _valuation(f.den)
    if vn < vd:
        raise ValueError(f"{f.to_text()} has a pole at u = 0")
    n, d = n[vd:], d[vd:]
    get = lambda xs, i: Fraction(int(xs[i])) if i < len(xs) else Fraction(0)
    n0, n1, d0, d1 = get(n, 0), get(n, 1), get(d, 0), get(d, 1)
    return (n1 * d0 - n0 * d1) / (d0 * d0)


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(u(?:\^(-?\d+))?)?")


def _parse_laurent(text: str) -> LaurentPolynomial:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return LaurentPolynomial()
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        sign, c, mono, e = m.groups()
        if c is None and mono is None:
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        coeff = Fraction(c) if c is not None else Fraction(1)
        if sign == "-":
            coeff = -coeff
        exp = 0 if mono is None else (int(e) if e is not None else 1)
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + coeff
        pos = m.end()
    return LaurentPolynomial(coeffs)


def parse_value(text: str) -> RationalFunction:
    """Inverse of ``RationalFunction.to_text``.

    >>> parse_value("(u)/(1 + u^2)") == 1 / RationalFunction.qint(2)
    True
    """
    text = text.strip()
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
    if m:
        return RationalFunction.from_laurent(_parse_laurent(m.group(1))) / RationalFunction.from_laurent(
            _parse_laurent(m.group(2))
        )
    return RationalFunction.from_laurent(_parse_laurent(text))


# --------------------------------------------------------------------------
# Dense matrices and elimination
# --------------------------------------------------------------------------

RF = RationalFunction
_RF0 = RationalFunction(0)
_RF1 = RationalFunction(1)


class InconsistentSystemError(ValueError):
    """Raised by solve_linear when A x = b has no solution."""


class ExactMatrix:
    """Dense matrix over Q(u), backed by a numpy object array.

    >>> m = ExactMatrix.identity(2)
    >>> (m @ m) == m, m.shape
    (True, (2, 2))
    """

    __slots__ = ("a",)

    def __init__(self, rows: Iterable[Sequence] | np.ndarray):
        if isinstance(rows, np.ndarray):
            arr = rows
        else:
            rows = [list(r) for r in rows]
            nr = len(rows)
            nc = len(rows[0]) if nr else 0
            arr = np.empty((nr, nc), dtype=object)
            for i, r in enumerate(rows):
                if len(r) != nc:
                    raise ValueError("ragged matrix")
                for j, x in enumerate(r):
                    arr[i, j] = x
        out = np.empty(arr.shape, dtype=object)
        for idx, x in np.ndenumerate(arr):
            out[idx] = RationalFunction.coerce(x)
        self.a = out

    @classmethod
    def zeros(cls, nr: int, nc: int) -> "ExactMatrix":
        arr = np.empty((nr, nc), dtype=object)
        arr.fill(_RF0)
        return cls._wrap(arr)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.a[i, i] = _RF1
        return m

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "ExactMatrix":
        obj = cls.__new__(cls)
        obj.a = arr
        return obj

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "ExactMatrix":
        if not cols:
            return cls.zeros(0, 0)
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))])

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def __getitem__(self, idx):
        return self.a[idx]

    def __setitem__(self, idx, value):
        self.a[idx] = RationalFunction.coerce(value)

    def column(self, j: int) -> list[RationalFunction]:
        return list(self.a[:, j])

    def row(self, i: int) -> list[RationalFunction]:
        return list(self.a[i, :])

    def tolist(self) -> list[list[RationalFunction]]:
        return [list(r) for r in self.a]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self.a.T.copy())

    T = property(transpose)

    def map(self, fn) -> "ExactMatrix":
        out = np.empty(self.a.shape, dtype=object)
        for idx, x in np.ndenumerate(self.a):
            out[idx] = fn(x)
        return ExactMatrix._wrap(out)

    def bar(self) -> "ExactMatrix":
        return self.map(lambda x: x.bar())

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = np.empty((self.rows, other.cols), dtype=object)
        for i in range(self.rows):
            ri = [(k, x) for k, x in enumerate(self.a[i]) if x]
            for j in range(other.cols):
                acc = _RF0
                for k, x in ri:
                    y = other.a[k, j]
                    if y:
                        acc = acc + x * y
                out[i, j] = acc
        return ExactMatrix._wrap(out)

    def apply(self, vec: Sequence) -> list[RationalFunction]:
        out = []
        for i in range(self.rows):
            acc = _RF0
            for x, y in zip(self.a[i], vec):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return out

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix._wrap(self.a + other.a)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix._wrap(self.a + (-other.a))

    def scale(self, c) -> "ExactMatrix":
        c = RationalFunction.coerce(c)
        return self.map(lambda x: x * c)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix) or self.shape != other.shape:
            return False
        return all(x == y for x, y in zip(self.a.flat, other.a.flat))

    __hash__ = None

    def __repr__(self):
        return "ExactMatrix([" + ", ".join(
            "[" + ", ".join(x.to_text() for x in r) + "]" for r in self.a
        ) + "])"

    def is_identity(self) -> bool:
        n, m = self.shape
        return n == m and all(
            self.a[i, j] == (_RF1 if i == j else _RF0) for i in range(n) for j in range(m)
        )

    def inverse(self) -> "ExactMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        rr = _rref(self.a, np.eye(n, dtype=int).astype(object))
        if len(rr.pivots) != n:
            raise ZeroDivisionError("singular matrix")
        return ExactMatrix._wrap(rr.rhs)

    def rank(self) -> int:
        return len(_rref(self.a).pivots)


class _RREF:
    __slots__ = ("mat", "rhs", "pivots")

    def __init__(self, mat, rhs, pivots):
        self.mat, self.rhs, self.pivots = mat, rhs, pivots


def _rref(a: np.ndarray, rhs: np.ndarray | None = None) -> _RREF:
    """Gauss-Jordan elimination over Q(u).

    The pivot in each column is the nonzero candidate of least
    (numerator degree + denominator degree).
    """
    nr, nc = a.shape
    m = [[RationalFunction.coerce(x) for x in row] for row in a]
    b = None
    if rhs is not None:
        b = [[RationalFunction.coerce(x) for x in row] for row in rhs]
    pivots: list[int] = []
    row = 0
    for col in range(nc):
        if row >= nr:
            break
        best, best_c = None, None
        for i in range(row, nr):
            x = m[i][col]
            if x:
                c = x.complexity()
                if best is None or c < best_c:
                    best, best_c = i, c
        if best is None:
            continue
        m[row], m[best] = m[best], m[row]
        if b is not None:
            b[row], b[best] = b[best], b[row]
        p = m[row][col]
        if p != _RF1:
            inv = _RF1 / p
            m[row] = [x * inv if x else x for x in m[row]]
            if b is not None:
                b[row] = [x * inv if x else x for x in b[row]]
        prow = m[row]
        nz = [j for j in range(col, nc) if prow[j]]
        bnz = [j for j, x in enumerate(b[row]) if x] if b is not None else []
        for i in range(nr):
            if i == row:
                continue
            f = m[i][col]
            if not f:
                continue
            mi = m[i]
            for j in nz:
                mi[j] = mi[j] - f * prow[j]
            if b is not None:
                bi, br = b[i], b[row]
                for j in bnz:
                    bi[j] = bi[j] - f * br[j]
        pivots.append(col)
        row += 1
    mat = np.empty((nr, nc), dtype=object)
    for i in range(nr):
        for j in range(nc):
            mat[i, j] = m[i][j]
    out_b = None
    if b is not None:
        out_b = np.empty((nr, len(b[0]) if nr else 0), dtype=object)
        for i in range(nr):
            for j in range(out_b.shape[1]):
                out_b[i, j] = b[i][j]
    return _RREF(mat, out_b, pivots)


def _as_array(A) -> np.ndarray:
    if isinstance(A, ExactMatrix):
        return A.a
    return ExactMatrix(A).a


def nullspace(A) -> list[list[RationalFunction]]:
    """Basis of {x : A x = 0}."""
    arr = _as_array(A)
    nr, nc = arr.shape
    rr = _rref(arr)
    free = [j for j in range(nc) if j not in rr.pivots]
    basis = []
    for f in free:
        x = [_RF0] * nc
        x[f] = _RF1
        for i, p in enumerate(rr.pivots):
            x[p] = -rr.mat[i, f]
        basis.append(x)
    return basis


def rank(A) -> int:
    return len(_rref(_as_array(A)).pivots)


def solve_linear(A, b, *, with_nullspace: bool = False):
    """Solve A x = b exactly.

    ``b`` may be a single column (list) or a matrix of right-hand sides.
    Raises InconsistentSystemError when there is no solution.  With
    ``with_nullspace=True`` returns ``(x, nullspace_basis)``.

    >>> u = RationalFunction.u(); two = RationalFunction.qint(2)
    >>> A = ExactMatrix([[u, 0], [0, two]])
    >>> [x.to_text() for x in solve_linear(A, [u * u, two * two])]
    ['u', 'u^-1 + u']
    """
    arr = _as_array(A)
    nr, nc = arr.shape
    single = not isinstance(b, (ExactMatrix, np.ndarray)) and (len(b) == 0 or not isinstance(b[0], (list, tuple)))
    if single:
        rhs = np.empty((nr, 1), dtype=object)
        for i in range(nr):
            rhs[i, 0] = RationalFunction.coerce(b[i])
    else:
        rhs = _as_array(b)
    rr = _rref(arr, rhs)
    k = len(rr.pivots)
    for i in range(k, nr):
        if any(rr.rhs[i, j] for j in range(rhs.shape[1])):
            raise InconsistentSystemError("linear system has no solution")
    sol = np.empty((nc, rhs.shape[1]), dtype=object)
    sol.fill(_RF0)
    for i, p in enumerate(rr.pivots):
        sol[p, :] = rr.rhs[i, :]
    x = [sol[j, 0] for j in range(nc)] if single else ExactMatrix._wrap(sol)
    if with_nullspace:
        free = [j for j in range(nc) if j not in rr.pivots]
        basis = []
        for f in free:
            v = [_RF0] * nc
            v[f] = _RF1
            for i, p in enumerate(rr.pivots):
                v[p] = -rr.mat[i, f]
            basis.append(v)
        return x, basis
    return x


def span_intersection(U: Sequence[Sequence], W: Sequence[Sequence]) -> list[list[RationalFunction]]:
    """Basis of span(U) ∩ span(W) for lists of column vectors.

    >>> e = lambda *xs: [RationalFunction(x) for x in xs]
    >>> out = span_intersection([e(1, 1, 0), e(0, 1, 1)], [e(1, 0, 0), e(0, 1, 0)])
    >>> [[x.to_text() for x in v] for v in out]
    [['1', '1', '0']]
    """
    if not U or not W:
        return []
    dim = len(U[0])
    cols = list(U) + [[-RationalFunction.coerce(x) for x in w] for w in W]
    A = ExactMatrix.from_columns(cols) if dim else ExactMatrix.zeros(0, len(cols))
    kernel = nullspace(A)
    vecs = []
    for z in kernel:
        v = [_RF0] * dim
        for j, u in enumerate(U):
            c = z[j]
            if c:
                for i in range(dim):
                    if u[i]:
                        v[i] = v[i] + c * RationalFunction.coerce(u[i])
        vecs.append(v)
    if not vecs:
        return []
    # keep an independent subset
    rr = _rref(ExactMatrix.from_columns(vecs).a)
    return [vecs[p] for p in rr.pivots]


def bar_correct(R: ExactMatrix, lattice: str) -> ExactMatrix:
    """Canonical basis from a unitriangular bar matrix.

    ``R`` is upper unitriangular with ``bar(b_j) = sum_i R[i, j] b_i``.  Returns
    the unitriangular matrix P whose column k is the unique bar-invariant
    element ``b_k + sum_{i<k} P[i, k] b_i`` with off-diagonal entries in
    u^-1 Z[u^-1] (``lattice="negative"``) or u Z[u] (``lattice="positive"``).

    >>> u = RationalFunction.u()
    >>> R = ExactMatrix([[1, 1 / u - u], [0, 1]])   # bar(T_s) = T_s + u^-1 - u
    >>> bar_correct(R, "negative")[0, 1].to_text()
    'u^-1'
    """
    if lattice not in ("negative", "positive"):
        raise ValueError(f"unknown lattice {lattice!r}")
    n = R.rows
    P = ExactMatrix.identity(n)
    for k in range(n):
        for i in range(k - 1, -1, -1):
            rhs = _RF0
            for j in range(i + 1, k + 1):
                rij, pjk = R[i, j], P[j, k]
                if rij and pjk:
                    rhs = rhs + rij * pjk.bar()
            if not rhs:
                continue
            if not rhs.is_laurent():
                raise InconsistentSystemError("bar matrix is not integral")
            lp = rhs.to_laurent()
            if lp.bar() != -lp:
                raise InconsistentSystemError("bar matrix is not an involution")
            part = lp.negative_part() if lattice == "negative" else lp.positive_part()
            P[i, k] = RationalFunction.from_laurent(part)
    return P


@dataclass
class LabeledMatrix:
    """A matrix over Q(u) with row and column labels (words, permutations or tableaux)."""

    rows: list
    cols: list
    matrix: ExactMatrix

    def __post_init__(self):
        if self.matrix.shape != (len(self.rows), len(self.cols)):
            raise ValueError("label count does not match matrix shape")
        self._ri = {k: i for i, k in enumerate(self.rows)}
        self._ci = {k: j for j, k in enumerate(self.cols)}

    def __getitem__(self, key):
        row, col = key
        return self.matrix[self._ri[row], self._ci[col]]

    def column(self, col) -> dict:
        j = self._ci[col]
        return {r: self.matrix[i, j] for i, r in enumerate(self.rows) if self.matrix[i, j]}

    def inverse(self) -> "LabeledMatrix":
        return LabeledMatrix(list(self.cols), list(self.rows), self.matrix.inverse())

    def transpose(self) -> "LabeledMatrix":
        return LabeledMatrix(list(self.cols), list(self.rows), self.matrix.transpose())

    def entries(self):
        for i, r in enumerate(self.rows):
            for j, c in enumerate(self.cols):
                yield r, c, self.matrix[i, j]


def _strip_u(p: fmpz_poly) -> fmpz_poly:
    v = _valuation(p)
    return p.right_shift(v) if v else p


def gcd_normalizer(values: Iterable[RationalFunction]) -> RationalFunction:
    """The bar-invariant D (positive leading coefficient) with D*f in A for all f and gcd 1.

    >>> D = gcd_normalizer([RationalFunction.qint(2) / RationalFunction.qint(3), RationalFunction(1) / RationalFunction.qint(3)])
    >>> D.pretty()
    '[3]'
    """
    g = None
    l = None
    seen = []
    for f in values:
        f = RationalFunction.coerce(f)
        if not f:
            continue
        if not f.is_bar_invariant():
            raise ValueError(f"entry {f} is not bar-invariant")
        seen.append(f)
        a, b = _strip_u(f.num), _strip_u(f.den)
        g = a if g is None else g.gcd(a)
        l = b if l is None else (l * b) // l.gcd(b)
    if g is None:
        raise ValueError("gcd normalizer of the zero matrix")
    twice = g.degree() - l.degree()
    if twice % 2:
        raise ValueError("no bar-invariant normalizer exists")
    D = RationalFunction._canonical(l, g) * RationalFunction.monomial(twice // 2)
    if D.num.leading_coefficient() < 0:
        D = -D
    for f in seen:
        h = D * f
        if not (h.is_laurent() and h.is_bar_invariant()):
            raise ArithmeticError("normalizer check failed")
    return D


@dataclass
class GcdNormalizer:
    """D(M) (listed with both signs) and the normalized matrix D(M) M."""

    name: str
    D: RationalFunction
    normalized: LabeledMatrix

    @property
    def signs(self) -> tuple[RationalFunction, RationalFunction]:
        return self.D, -self.D


def normalize_gcd(M: LabeledMatrix, name: str = "") -> GcdNormalizer:
    D = gcd_normalizer(c for _, _, c in M.entries())
    return GcdNormalizer(name, D, LabeledMatrix(list(M.rows), list(M.cols), M.matrix.scale(D)))
