"""Exact Laurent polynomials and rational functions in one variable over Q.

Scalars are :class:`fractions.Fraction`.  Everything here is immutable.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping

from .errors import NegativeExponent, ZeroScale

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would smuggle rounding into exact identities.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


class LaurentPoly:
    """Finite sum of c_k x^k with k in Z and c_k rational, zero terms dropped."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = as_rational(c)
                if c:
                    clean[int(k)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # terms already validated: int keys, nonzero Fraction values
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, start: int = 0) -> "LaurentPoly":
        """Build sum(coeffs[i] x^(start+i))."""
        return cls({start + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def x(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "LaurentPoly":
        """lead * prod (x - r)."""
        out = cls.const(lead)
        for r in roots:
            out = out * cls({1: 1, 0: -as_rational(r)})
        return out

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, k: int) -> Fraction:
        return self._terms.get(k, Fraction(0))

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero Laurent polynomial")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero Laurent polynomial")
        return min(self._terms)

    def leading_coeff(self) -> Fraction:
        return self._terms[self.degree()]

    def is_polynomial(self) -> bool:
        return all(k >= 0 for k in self._terms)

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coeff_list(self) -> list:
        """Dense coefficients [c_0, ..., c_deg] of an ordinary polynomial."""
        if not self.is_polynomial():
            raise NegativeExponent(f"{self} has negative exponents")
        if not self._terms:
            return []
        return [self.coeff(k) for k in range(self.degree() + 1)]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            if not self._terms or not other._terms:
                return LaurentPoly._raw({})
            out: dict = {}
            for i, a in self._terms.items():
                for j, b in other._terms.items():
                    out[i + j] = out.get(i + j, 0) + a * b
            return LaurentPoly._raw({k: c for k, c in out.items() if c})
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        if not c:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (k, c), = self._terms.items()
            return LaurentPoly._raw({k * n: c ** n})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift_exponents(self, k: int) -> "LaurentPoly":
        """Multiply by x^k."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def scale_substitute(self, lam) -> "LaurentPoly":
        """Return f(lam * x)."""
        lam = as_rational(lam)
        if lam == 1:
            return self
        if lam == 0:
            if any(k < 0 for k in self._terms):
                raise ZeroScale("f(0*x) undefined for negative exponents")
            return LaurentPoly.const(self.coeff(0))
        return LaurentPoly._raw({k: c * lam ** k for k, c in self._terms.items()})

    def __call__(self, point):
        point = as_rational(point)
        if point == 0:
            if any(k < 0 for k in self._terms):
                raise ZeroDivisionError("evaluating negative powers at 0")
            return self.coeff(0)
        return sum((c * point ** k for k, c in self._terms.items()), Fraction(0))

    def monic(self) -> "LaurentPoly":
        return self * (1 / self.leading_coeff())

    def divmod(self, other: "LaurentPoly"):
        """Euclidean division of ordinary polynomials."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        if not (self.is_polynomial() and other.is_polynomial()):
            raise NegativeExponent("divmod needs ordinary polynomials")
        r = dict(self._terms)
        dg = other.degree()
        lc = other.leading_coeff()
        quo: dict = {}
        while r:
            top = max(r)
            if top < dg:
                break
            f = r[top] / lc
            quo[top - dg] = f
            for k, c in other._terms.items():
                e = k + top - dg
                v = r.get(e, 0) - f * c
                if v:
                    r[e] = v
                else:
                    r.pop(e, None)
        return LaurentPoly._raw(quo), LaurentPoly._raw(r)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        try:
            return self._terms == LaurentPoly.const(as_rational(other))._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items(), reverse=True):
            coef = format_rational(c)
            if k == 0:
                parts.append(coef)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append("-" + mono)
                else:
                    parts.append(f"{coef}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _lift(value):
    if isinstance(value, LaurentPoly):
        return value
    try:
        return LaurentPoly.const(as_rational(value))
    except TypeError:
        return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
X = LaurentPoly.x()


def lp_arith(f: LaurentPoly, g: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def scale_substitute(f: LaurentPoly, lam) -> LaurentPoly:
    return f.scale_substitute(lam)


def poly_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two ordinary polynomials (gcd(0, 0) = 0)."""
    while g:
        _, r = f.divmod(g)
        f, g = g, r
    return f.monic() if f else f


def _split_x_power(p: LaurentPoly):
    """p = x^v * p0 with p0(0) != 0."""
    v = p.valuation()
    return v, p.shift_exponents(-v)


class RatFunc:
    """Reduced quotient num/den of Laurent polynomials.

    Stored canonically as a Laurent numerator over an ordinary polynomial
    denominator with nonzero constant term and leading coefficient 1, so the
    powers of x are carried by the numerator.  ``numer_poly``/``denom_poly``
    give the equivalent pair of ordinary polynomials.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = _lift(num)
        den = ONE if den is None else _lift(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc needs Laurent polynomial or rational parts")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def lift(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        lp = _lift(value)
        if lp is NotImplemented:
            raise TypeError(f"cannot lift {type(value).__name__} to RatFunc")
        return cls._raw(lp, ONE)

    def is_laurent(self) -> bool:
        return self.den == ONE

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def as_laurent(self) -> LaurentPoly:
        if self.den != ONE:
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def numer_poly(self) -> LaurentPoly:
        if not self.num:
            return ZERO
        v = min(self.num.valuation(), 0)
        return self.num.shift_exponents(-v)

    def denom_poly(self) -> LaurentPoly:
        if not self.num:
            return ONE
        v = min(self.num.valuation(), 0)
        return self.den.shift_exponents(-v)

    def __add__(self, other):
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.den == ONE:
                return RatFunc._raw(self.num + other.num, ONE)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        if self.den == ONE and other.den == ONE:
            return RatFunc._raw(self.num * other.num, ONE)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        if not other:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        return other / self

    def scale_substitute(self, lam) -> "RatFunc":
        lam = as_rational(lam)
        if lam == 1:
            return self
        if lam == 0:
            raise ZeroScale("argument scaling by zero")
        if self.den == ONE:
            return RatFunc._raw(self.num.scale_substitute(lam), ONE)
        return RatFunc(self.num.scale_substitute(lam), self.den.scale_substitute(lam))

    def __call__(self, point):
        d = self.den(point)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at {point}")
        return self.num(point) / d

    def __eq__(self, other):
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _lift_rf(value):
    if isinstance(value, RatFunc):
        return value
    lp = _lift(value)
    if lp is NotImplemented:
        return NotImplemented
    return RatFunc._raw(lp, ONE)


def _canonical(num: LaurentPoly, den: LaurentPoly):
    if not num:
        return ZERO, ONE
    v, d0 = _split_x_power(den)
    num = num.shift_exponents(-v)
    if d0.is_constant():
        return num * (1 / d0.coeff(0)), ONE
    w, n0 = _split_x_power(num)
    g = poly_gcd(n0, d0)
    if g.degree() > 0:
        n0, r1 = n0.divmod(g)
        d0, r2 = d0.divmod(g)
        assert not r1 and not r2
    lc = d0.leading_coeff()
    return n0.shift_exponents(w) * (1 / lc), d0 * (1 / lc)


def rf_normalize(num, den) -> RatFunc:
    return RatFunc(num, den)
