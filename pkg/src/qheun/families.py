"""q-Pochhammer basis, the big q-Jacobi pair (X, Y) and its eigen-data,
and the terminating basic hypergeometric sums used for Pastro polynomials."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateSpectrum, FitFailure, NegativeExponent, SingularParameters
from .exact import ONE, X, LaurentPoly, as_rational
from .linsolve import LinSystem, solve_exact
from .skew import SkewOperator


@dataclass(frozen=True)
class Params:
    """Big q-Jacobi parameters.  ``n_max`` only bounds the q^k != 1 guard."""

    q: Fraction
    a: Fraction
    b: Fraction
    c: Fraction
    n_max: int = 16

    def __post_init__(self):
        for name in ("q", "a", "b", "c"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.q in (0, 1, -1):
            raise ValueError(f"q must avoid 0 and +-1, got {self.q}")
        for k in range(2, 2 * self.n_max + 1):
            if self.q ** k == 1:
                raise ValueError(f"q^{k} = 1")

    def replace(self, **changes) -> "Params":
        fields = dict(q=self.q, a=self.a, b=self.b, c=self.c, n_max=self.n_max)
        fields.update(changes)
        return Params(**fields)


def pochhammer_basis(q, n: int) -> LaurentPoly:
    """phi_n(x) = (x; q)_n = prod_{j<n} (1 - q^j x)."""
    q = as_rational(q)
    out = ONE
    for j in range(n):
        out = out * LaurentPoly({0: 1, 1: -(q ** j)})
    return out


def to_pochhammer_coeffs(f: LaurentPoly, q) -> list:
    """Coefficients c_n with f = sum c_n phi_n(x)."""
    q = as_rational(q)
    if not f.is_polynomial():
        raise NegativeExponent(f"{f} is not an ordinary polynomial")
    if not f:
        return []
    deg = f.degree()
    basis = [pochhammer_basis(q, n) for n in range(deg + 1)]
    rest = f
    out = [Fraction(0)] * (deg + 1)
    for n in range(deg, -1, -1):
        c = rest.coeff(n) / basis[n].coeff(n)
        out[n] = c
        if c:
            rest = rest - basis[n] * c
    assert not rest
    return out


def multiplication_operator(q) -> SkewOperator:
    """X: multiplication by x."""
    return SkewOperator.multiplication(q, X)


def big_qjacobi_coefficients(p: Params):
    """B(x), D(x) of the big q-Jacobi difference operator."""
    q, a, b, c = p.q, p.a, p.b, p.c
    B = (a * q) * LaurentPoly({1: 1, 0: -1}) * LaurentPoly({1: b, 0: -c})
    D = LaurentPoly({1: 1, 0: -a * q}) * LaurentPoly({1: 1, 0: -c * q})
    return B.shift_exponents(-2), D.shift_exponents(-2)


def big_qjacobi_operator(p: Params) -> SkewOperator:
    """Y = B T^+ + D T^- - (B + D) I."""
    B, D = big_qjacobi_coefficients(p)
    return SkewOperator(p.q, {1: B, -1: D, 0: -(B + D)})


def lambda_n(p: Params, n: int) -> Fraction:
    q = p.q
    return (q ** -n - 1) * (1 - p.a * p.b * q ** (n + 1))


def mu_n(p: Params, n: int) -> Fraction:
    q = p.q
    return (1 - q ** -n) * (p.a * q ** n - 1) * (p.c * q ** n - 1)


def _monomial_images(op: SkewOperator, n: int) -> list:
    images = []
    for m in range(n + 1):
        img = op.apply(LaurentPoly.monomial(m))
        if img and (not img.is_polynomial() or img.degree() > m):
            raise ValueError(f"operator does not preserve degree on x^{m}: {img}")
        images.append(img)
    return images


def big_qjacobi_poly(p: Params, n: int, _images=None) -> LaurentPoly:
    """Monic P_n with Y P_n = lambda_n P_n, by triangular solve on monomials."""
    lam = [lambda_n(p, m) for m in range(n + 1)]
    for m in range(n):
        if lam[m] == lam[n]:
            raise DegenerateSpectrum(f"lambda_{m} = lambda_{n} = {lam[n]}")
    images = _images or _monomial_images(big_qjacobi_operator(p), n)
    coef = [Fraction(0)] * (n + 1)
    coef[n] = Fraction(1)
    for j in range(n - 1, -1, -1):
        s = sum((coef[m] * images[m].coeff(j) for m in range(j + 1, n + 1)), Fraction(0))
        diag = images[j].coeff(j)
        coef[j] = s / (lam[n] - diag)
    return LaurentPoly.from_coeffs(coef)


class PolyFamily:
    """Lazily built, cached monic representatives P_0, P_1, ...

    ``kind`` is ``"pochhammer"``, ``"bigqjacobi"`` or ``"pastro"``.  The cache
    is guarded by a lock so concurrent readers only see complete entries.
    """

    def __init__(self, kind: str, params):
        if kind not in ("pochhammer", "bigqjacobi", "pastro"):
            raise ValueError(f"unknown family {kind!r}")
        self.kind = kind
        self.params = params
        self._cache: list = []
        self._lock = threading.Lock()

    @property
    def q(self) -> Fraction:
        return self.params.q if hasattr(self.params, "q") else as_rational(self.params)

    def _build(self, n: int) -> LaurentPoly:
        if self.kind == "pochhammer":
            return pochhammer_basis(self.q, n)
        if self.kind == "bigqjacobi":
            return big_qjacobi_poly(self.params, n)
        pp = self.params
        return pastro_poly(pp.a, pp.b, pp.q, n)

    def __getitem__(self, n: int) -> LaurentPoly:
        with self._lock:
            if n < len(self._cache):
                return self._cache[n]
        built = [self._build(m) for m in range(len(self._cache), n + 1)]
        with self._lock:
            for m, poly in enumerate(built, start=len(self._cache)):
                if m == len(self._cache):
                    self._cache.append(poly)
            return self._cache[n]

    def polys(self, n: int) -> list:
        return [self[m] for m in range(n + 1)]

    def expand(self, f: LaurentPoly) -> list:
        """Coefficients of f in this basis (triangular back-substitution)."""
        if self.kind == "pochhammer":
            return to_pochhammer_coeffs(f, self.q)
        if not f.is_polynomial():
            raise NegativeExponent(f"{f} is not an ordinary polynomial")
        if not f:
            return []
        deg = f.degree()
        out = [Fraction(0)] * (deg + 1)
        rest = f
        for n in range(deg, -1, -1):
            P = self[n]
            c = rest.coeff(n) / P.coeff(n)
            out[n] = c
            if c:
                rest = rest - P * c
        return out


def recurrence_coeffs(p: Params, n: int, family: PolyFamily | None = None):
    """(b_n, u_n) with x P_n = P_{n+1} + b_n P_n + u_n P_{n-1}.

    Solved from every coefficient of the identity; ``u_0`` is ``None``.
    """
    fam = family or PolyFamily("bigqjacobi", p)
    lhs = X * fam[n] - fam[n + 1]
    cols = [fam[n]] + ([fam[n - 1]] if n > 0 else [])
    sol = _fit_columns(lhs, cols)
    if n == 0:
        return sol[0], None
    return sol[0], sol[1]


def _fit_columns(target: LaurentPoly, cols: list) -> list:
    powers = sorted(set(target.terms).union(*(set(c.terms) for c in cols)))
    A = [[c.coeff(e) for c in cols] for e in powers]
    rhs = [target.coeff(e) for e in powers]
    sol = solve_exact(LinSystem(A, rhs))
    if sol.status != "unique":
        raise FitFailure(f"coefficient matching is {sol.status}")
    return list(sol.particular)


def qpochhammer_symbol(t, q, k: int) -> Fraction:
    """(t; q)_k = prod_{j<k} (1 - t q^j)."""
    t, q = as_rational(t), as_rational(q)
    out = Fraction(1)
    for j in range(k):
        out *= 1 - t * q ** j
    return out


def terminating_phi21(upper, lower, q, z: LaurentPoly, n: int) -> LaurentPoly:
    """sum_{k=0}^{n} (u1;q)_k (u2;q)_k / ((l;q)_k (q;q)_k) z^k with z a polynomial."""
    u1, u2 = (as_rational(u) for u in upper)
    low, q = as_rational(lower), as_rational(q)
    out = LaurentPoly()
    zk = ONE
    for k in range(n + 1):
        den = qpochhammer_symbol(low, q, k) * qpochhammer_symbol(q, q, k)
        if den == 0:
            raise SingularParameters(f"lower factor ({low}; q)_{k} vanishes")
        out = out + zk * (qpochhammer_symbol(u1, q, k) * qpochhammer_symbol(u2, q, k) / den)
        zk = zk * z
    return out


def pastro_poly(a, b, q, n: int) -> LaurentPoly:
    """Monic Pastro polynomial of degree n in z."""
    a, b, q = as_rational(a), as_rational(b), as_rational(q)
    if a == 0 or b == 0:
        raise SingularParameters("Pastro parameters a and b must be nonzero")
    lower = b / a * q ** (1 - n)
    for k in range(n + 1):
        if qpochhammer_symbol(lower, q, k) == 0:
            raise SingularParameters(f"lower factor ((b/a) q^(1-n); q)_{k} vanishes for n = {n}")
    series = terminating_phi21((q ** -n, b), lower, q, LaurentPoly({1: b * b / a}), n)
    if not series or series.degree() != n:
        raise SingularParameters(f"z^{n} coefficient vanishes: (b; q)_{n} = {qpochhammer_symbol(b, q, n)}")
    return series * (1 / series.coeff(n))


def check_pochhammer_actions(p: Params, n_max: int):
    """Y phi_n = lambda_n phi_n + mu_n phi_{n-1} and x phi_n = q^-n (phi_n - phi_{n+1})."""
    from .report import CheckRecord, CheckReport
    Y = big_qjacobi_operator(p)
    q = p.q
    report = CheckReport("pochhammer_actions")
    for n in range(n_max + 1):
        phi = pochhammer_basis(q, n)
        prev = pochhammer_basis(q, n - 1) if n else LaurentPoly()
        y_res = Y.apply(phi) - phi * lambda_n(p, n) - prev * mu_n(p, n)
        x_res = X * phi - (phi - pochhammer_basis(q, n + 1)) * (q ** -n)
        rec = report.add(CheckRecord("pochhammer_actions", {"n": n}, passed=not y_res and not x_res))
        if not rec.passed:
            rec.witness = {"Y": y_res, "X": x_res}
    return report


def check_eigen_residuals(p: Params, n_max: int, family: PolyFamily | None = None):
    from .report import CheckRecord, CheckReport
    fam = family or PolyFamily("bigqjacobi", p)
    Y = big_qjacobi_operator(p)
    report = CheckReport("eigen_residual")
    for n in range(n_max + 1):
        P = fam[n]
        res = Y.apply(P) - P * lambda_n(p, n)
        rec = report.add(CheckRecord("eigen_residual", {"n": n}, passed=not res and P.leading_coeff() == 1
                                     and P.degree() == n))
        if not rec.passed:
            rec.witness = res
    return report


def check_recurrence(p: Params, n_max: int, family: PolyFamily | None = None):
    """x P_n = P_{n+1} + b_n P_n + u_n P_{n-1} re-checked with the fitted (b_n, u_n)."""
    from .report import CheckRecord, CheckReport
    fam = family or PolyFamily("bigqjacobi", p)
    report = CheckReport("recurrence")
    for n in range(n_max + 1):
        rec = CheckRecord("recurrence", {"n": n})
        try:
            b_n, u_n = recurrence_coeffs(p, n, fam)
        except FitFailure as exc:
            rec.passed = False
            rec.detail["error"] = str(exc)
            report.add(rec)
            continue
        rhs = fam[n + 1] + fam[n] * b_n + (fam[n - 1] * u_n if n else LaurentPoly())
        res = X * fam[n] - rhs
        rec.passed = not res
        rec.detail = {"b": b_n, "u": u_n}
        if res:
            rec.witness = res
        report.add(rec)
    return report
