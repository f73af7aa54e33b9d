"""q-shift operators sum_k C_k(x) T^k with rational-function coefficients.

``T`` acts by ``(T f)(x) = f(q x)``, so ``T^k`` substitutes ``q^k x`` and the
multiplication rule is ``(A T^j)(B T^k) = A(x) B(q^j x) T^(j+k)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import BaseMismatch, NonPolynomialResult, ZeroMultiplier, ZeroScale
from .exact import ONE, LaurentPoly, RatFunc, as_rational, format_rational, poly_gcd


class SkewOperator:
    __slots__ = ("q", "_coeffs", "_hash")

    def __init__(self, q, coeffs: Mapping[int, object] | None = None):
        q = as_rational(q)
        if q in (0, 1, -1):
            raise ValueError(f"shift base q must avoid 0 and +-1, got {q}")
        self.q = q
        clean = {}
        for k, c in (coeffs or {}).items():
            c = RatFunc.lift(c)
            if c:
                clean[int(k)] = c
        self._coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, q, coeffs):
        obj = cls.__new__(cls)
        obj.q = q
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def identity(cls, q) -> "SkewOperator":
        return cls(q, {0: 1})

    @classmethod
    def zero(cls, q) -> "SkewOperator":
        return cls(q, {})

    @classmethod
    def shift(cls, q, k: int = 1) -> "SkewOperator":
        return cls(q, {k: 1})

    @classmethod
    def multiplication(cls, q, f) -> "SkewOperator":
        return cls(q, {0: f})

    # -- inspection ---------------------------------------------------------
    def coeff(self, k: int) -> RatFunc:
        return self._coeffs.get(k, RatFunc.lift(0))

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def support(self) -> set:
        return set(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def _check(self, other: "SkewOperator"):
        if self.q != other.q:
            raise BaseMismatch(f"shift bases differ: {self.q} vs {other.q}")

    # -- algebra ------------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        self._check(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SkewOperator._raw(self.q, out)

    __radd__ = __add__

    def __neg__(self):
        return SkewOperator._raw(self.q, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, SkewOperator):
            self._check(other)
            out: dict = {}
            q = self.q
            for j, a in self._coeffs.items():
                qj = q ** j
                for k, b in other._coeffs.items():
                    term = a * b.scale_substitute(qj)
                    e = j + k
                    out[e] = out[e] + term if e in out else term
            return SkewOperator._raw(q, {k: c for k, c in out.items() if c})
        try:
            c = as_rational(other)
        except TypeError:
            if isinstance(other, (LaurentPoly, RatFunc)):
                return self * SkewOperator.multiplication(self.q, other)
            return NotImplemented
        if not c:
            return SkewOperator._raw(self.q, {})
        return SkewOperator._raw(self.q, {k: v * c for k, v in self._coeffs.items()})

    def __rmul__(self, other):
        if isinstance(other, (LaurentPoly, RatFunc)):
            return SkewOperator.multiplication(self.q, other) * self
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative operator power")
        out = SkewOperator.identity(self.q)
        for _ in range(n):
            out = out * self
        return out

    def _lift(self, other):
        if isinstance(other, SkewOperator):
            return other
        if isinstance(other, (LaurentPoly, RatFunc)):
            return SkewOperator.multiplication(self.q, other)
        try:
            return SkewOperator.multiplication(self.q, as_rational(other))
        except TypeError:
            return NotImplemented

    # -- action ---------------------------------------------------------------
    def apply_rational(self, f) -> RatFunc:
        f = RatFunc.lift(f)
        total = RatFunc.lift(0)
        for k, c in self._coeffs.items():
            total = total + c * f.scale_substitute(self.q ** k)
        return total

    def apply(self, f) -> LaurentPoly:
        """Act on a Laurent polynomial; the result must stay Laurent."""
        if isinstance(f, RatFunc):
            f = f.as_laurent()
        elif not isinstance(f, LaurentPoly):
            f = LaurentPoly.const(f)
        if all(c.is_laurent() for c in self._coeffs.values()):
            total = LaurentPoly()
            for k, c in self._coeffs.items():
                total = total + c.num * f.scale_substitute(self.q ** k)
            return total
        res = self.apply_rational(f)
        if not res.is_laurent():
            raise NonPolynomialResult(res)
        return res.num

    def __call__(self, f):
        return self.apply(f)

    # -- transformations ----------------------------------------------------
    def conjugate_shiftscale(self, mu) -> "SkewOperator":
        """x^g W x^-g with mu = q^-g: the T^k coefficient gets a factor mu^k."""
        mu = as_rational(mu)
        if mu == 0:
            raise ZeroScale("conjugation factor must be nonzero")
        return SkewOperator._raw(self.q, {k: c * (mu ** k) for k, c in self._coeffs.items()})

    def scale_argument(self, eps) -> "SkewOperator":
        """S W S^-1 with (S f)(x) = f(eps x): every C_k(x) becomes C_k(eps x)."""
        eps = as_rational(eps)
        if eps == 0:
            raise ZeroScale("argument scaling by zero")
        return SkewOperator._raw(self.q, {k: c.scale_substitute(eps) for k, c in self._coeffs.items()})

    def affine(self, theta, alpha=0, beta=0) -> "SkewOperator":
        """theta(x) * (W + (alpha x + beta) I)."""
        theta = RatFunc.lift(theta)
        if not theta:
            raise ZeroMultiplier("affine multiplier theta must be nonzero")
        shifted = self + LaurentPoly({1: as_rational(alpha), 0: as_rational(beta)})
        return SkewOperator._raw(self.q, {k: theta * c for k, c in shifted._coeffs.items()})

    # -- comparison / output ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, SkewOperator):
            return self.q == other.q and self._coeffs == other._coeffs
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        return self == lifted

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.q, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        return f"SkewOperator(q={format_rational(self.q)}, {self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for k in sorted(self._coeffs, reverse=True):
            sym = "I" if k == 0 else f"T^{k}"
            parts.append(f"({self._coeffs[k]})*{sym}")
        return " + ".join(parts)

    def records(self) -> list:
        """Plain serialization: one record per shift degree.

        Each record is ``{"k", "num", "den"}`` with dense ascending coefficient
        lists of the ordinary-polynomial numerator and denominator.
        """
        out = []
        for k in sorted(self._coeffs):
            c = self._coeffs[k]
            out.append({
                "k": k,
                "num": [format_rational(v) for v in c.numer_poly().coeff_list()],
                "den": [format_rational(v) for v in c.denom_poly().coeff_list()],
            })
        return out

    @classmethod
    def from_records(cls, q, records: Iterable[Mapping]) -> "SkewOperator":
        coeffs = {}
        for rec in records:
            num = LaurentPoly.from_coeffs([Fraction(v) for v in rec["num"]])
            den = LaurentPoly.from_coeffs([Fraction(v) for v in rec["den"]])
            coeffs[int(rec["k"])] = RatFunc(num, den)
        return cls(q, coeffs)

    def to_text(self) -> str:
        lines = [f"q {format_rational(self.q)}"]
        for rec in self.records():
            lines.append(f"{rec['k']} [{' '.join(rec['num'])}] [{' '.join(rec['den'])}]")
        return "\n".join(lines)


def commutator(u: SkewOperator, v: SkewOperator) -> SkewOperator:
    return u * v - v * u


def anticommutator(u: SkewOperator, v: SkewOperator) -> SkewOperator:
    return u * v + v * u


def op_apply(w: SkewOperator, f) -> LaurentPoly:
    return w.apply(f)


def op_mul(u: SkewOperator, v: SkewOperator) -> SkewOperator:
    return u * v


def op_add(u: SkewOperator, v: SkewOperator) -> SkewOperator:
    return u + v


def op_scale(u: SkewOperator, c) -> SkewOperator:
    return u * as_rational(c)


op_commutator = commutator
op_anticommutator = anticommutator


def op_conjugate_shiftscale(w: SkewOperator, mu) -> SkewOperator:
    return w.conjugate_shiftscale(mu)


def op_scale_argument(w: SkewOperator, eps) -> SkewOperator:
    return w.scale_argument(eps)


def op_affine(w: SkewOperator, theta, alpha, beta) -> SkewOperator:
    return w.affine(theta, alpha, beta)


def coefficient_equations(ops: list) -> tuple:
    """Linearize ``sum_i t_i ops[i] = 0`` into scalar equations in the t_i.

    Each operator identity is cleared of denominators per shift degree and
    split by power of x.  Returns ``(rows, labels)`` with one row per
    (k, x-power) pair, labels ``(k, power)``.
    """
    ks = sorted(set().union(*(op.support() for op in ops))) if ops else []
    rows, labels = [], []
    for k in ks:
        coeffs = [op.coeff(k) for op in ops]
        den = ONE
        for c in coeffs:
            if c.den != ONE and c.den != den:
                g = poly_gcd(den, c.den)
                den = (den * c.den).divmod(g)[0]
        cleared = []
        for c in coeffs:
            if c.den == ONE:
                cleared.append(c.num * den)
            else:
                cleared.append(c.num * den.divmod(c.den)[0])
        powers = sorted(set().union(*(set(p.terms) for p in cleared)))
        for e in powers:
            rows.append([p.coeff(e) for p in cleared])
            labels.append((k, e))
    return rows, labels
