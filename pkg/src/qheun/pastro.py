"""Pastro polynomials as solutions of the pencil (L1 - lambda_n L2) P_n = 0."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FitFailure, SingularParameters
from .exact import X, LaurentPoly, as_rational
from .families import PolyFamily, _fit_columns, pastro_poly
from .heun import check_degree_raising
from .report import CheckRecord, CheckReport
from .skew import SkewOperator


@dataclass(frozen=True)
class PastroParams:
    a: Fraction
    b: Fraction
    q: Fraction

    def __post_init__(self):
        for name in ("a", "b", "q"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.a == 0 or self.b == 0:
            raise SingularParameters("Pastro parameters a and b must be nonzero")
        if self.q in (0, 1, -1):
            raise ValueError(f"q must avoid 0 and +-1, got {self.q}")


def pastro_l1(pp: PastroParams) -> SkewOperator:
    q, b = pp.q, pp.b
    up = LaurentPoly({1: b * b, 0: -q}) * (1 / (q - 1))
    zero = LaurentPoly({0: q, 1: -b}) * (1 / (q - 1))
    return SkewOperator(q, {1: up.shift_exponents(-1), 0: zero.shift_exponents(-1)})


def pastro_l2(pp: PastroParams) -> SkewOperator:
    q, a, b = pp.q, pp.a, pp.b
    down = LaurentPoly({0: a * q, 1: -b * b}) * (1 / b)
    zero = LaurentPoly({1: b ** 3, 0: -a * q}) * (1 / b)
    return SkewOperator(q, {-1: down.shift_exponents(-1), 0: zero.shift_exponents(-1)})


def pastro_lambda(pp: PastroParams, n: int) -> Fraction:
    return pp.q ** n / (pp.q - 1)


def is_little_shape(op: SkewOperator, max_deg: int = 2) -> bool:
    """Every coefficient is s(x)/x with s an ordinary polynomial of degree <= max_deg."""
    if op.support() - {-1, 0, 1}:
        return False
    for c in op.coeffs.values():
        if not c.is_laurent():
            return False
        s = c.num.shift_exponents(1)
        if not s.is_polynomial() or s.degree() > max_deg:
            return False
    return True


def pastro_family(pp: PastroParams) -> PolyFamily:
    return PolyFamily("pastro", pp)


def pastro_gevp_check(pp: PastroParams, n_max: int) -> CheckReport:
    """(L1 - lambda_n L2) P_n = 0 for n <= n_max.

    A failure most likely means the terminating sum convention is off, since
    the operators themselves are fixed.
    """
    L1, L2 = pastro_l1(pp), pastro_l2(pp)
    fam = pastro_family(pp)
    report = CheckReport("pastro_gevp")
    for n in range(n_max + 1):
        rec = CheckRecord("pastro_gevp", {"a": pp.a, "b": pp.b, "q": pp.q, "n": n})
        try:
            P = fam[n]
        except SingularParameters as exc:
            rec.passed = False
            rec.detail["error"] = str(exc)
            report.add(rec)
            break
        lam = pastro_lambda(pp, n)
        res = L1.apply(P) - L2.apply(P) * lam
        rec.detail["lambda"] = lam
        if res:
            rec.passed = False
            rec.witness = res
            rec.detail["hint"] = "check the 2phi1 convention of pastro_poly"
        report.add(rec)
    return report


def pastro_recurrence_fit(pp: PastroParams, n: int, family: PolyFamily | None = None):
    """(g_n, e_n) with P_{n+1} + g_n P_n = x (P_n + e_n P_{n-1}), matched on every coefficient."""
    if n < 1:
        raise ValueError("the recurrence needs n >= 1")
    fam = family or pastro_family(pp)
    Pm, P, Pp = fam[n - 1], fam[n], fam[n + 1]
    # unknowns (g, e): g P - e x P_{n-1} = x P - P_{n+1}
    try:
        g, e = _fit_columns(X * P - Pp, [P, -(X * Pm)])
    except FitFailure as exc:
        raise FitFailure(f"Pastro recurrence at n = {n}: {exc}") from exc
    return g, e


def pastro_by_recurrence(pp: PastroParams, n_max: int) -> list:
    """P_0..P_{n_max} generated from P_0, P_1 and the fitted (g_n, e_n)."""
    fam = pastro_family(pp)
    out = [fam[0], fam[1]][: n_max + 1]
    for n in range(1, n_max):
        g, e = pastro_recurrence_fit(pp, n, fam)
        out.append(X * (out[n] + out[n - 1] * e) - out[n] * g)
    return out


def pastro_recurrence_check(pp: PastroParams, n_max: int) -> CheckReport:
    fam = pastro_family(pp)
    report = CheckReport("pastro_recurrence")
    generated = pastro_by_recurrence(pp, n_max)
    for n, poly in enumerate(generated):
        rec = CheckRecord("pastro_recurrence", {"a": pp.a, "b": pp.b, "q": pp.q, "n": n})
        if n >= 1 and n < n_max:
            rec.detail["g"], rec.detail["e"] = pastro_recurrence_fit(pp, n, fam)
        if poly != fam[n]:
            rec.passed = False
            rec.witness = poly - fam[n]
        report.add(rec)
    return report


def pastro_shape_check(pp: PastroParams, n_max: int = 8) -> CheckReport:
    report = CheckReport("pastro_shape")
    for name, op, support in (("L1", pastro_l1(pp), {0, 1}), ("L2", pastro_l2(pp), {-1, 0})):
        rec = CheckRecord(f"pastro_shape[{name}]", {"a": pp.a, "b": pp.b, "q": pp.q})
        rec.passed = op.support() == support and is_little_shape(op, max_deg=1)
        deg = check_degree_raising(op, n_max)
        rec.passed = rec.passed and deg.passed
        if not rec.passed:
            rec.witness = op
        report.add(rec)
    return report


__all__ = [
    "PastroParams", "pastro_l1", "pastro_l2", "pastro_lambda", "is_little_shape", "pastro_family",
    "pastro_gevp_check", "pastro_recurrence_fit", "pastro_by_recurrence", "pastro_recurrence_check",
    "pastro_shape_check", "pastro_poly",
]
