"""Big and little q-Heun operators, Takemura's A<3>/A<4>, and executable
versions of the four characterization properties."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import (BoundaryLeak, ExpansionFailure, NonPolynomialResult, NoRationalScale,
                     NotHeunShape)
from .exact import ONE, X, LaurentPoly, RatFunc, as_rational
from .families import (Params, PolyFamily, big_qjacobi_operator, lambda_n,
                       multiplication_operator, mu_n, recurrence_coeffs)
from .report import CheckRecord, CheckReport
from .skew import SkewOperator


@dataclass(frozen=True)
class HeunData:
    """Polynomials (p3, p2, p1) with deg p_i <= i defining a big q-Heun operator."""

    p3: LaurentPoly
    p2: LaurentPoly
    p1: LaurentPoly
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", as_rational(self.q))
        for name, bound in (("p3", 3), ("p2", 2), ("p1", 1)):
            p = getattr(self, name)
            if not isinstance(p, LaurentPoly):
                p = LaurentPoly.from_coeffs(p) if isinstance(p, (list, tuple)) else LaurentPoly.const(p)
                object.__setattr__(self, name, p)
            if not p.is_polynomial():
                raise NotHeunShape(f"{name} = {p} has negative exponents")
            if p and p.degree() > bound:
                raise NotHeunShape(f"deg {name} = {p.degree()} exceeds {bound}")


@dataclass(frozen=True)
class TauSet:
    tau0: Fraction = Fraction(0)
    tau1: Fraction = Fraction(0)
    tau2: Fraction = Fraction(0)
    tau3: Fraction = Fraction(0)
    tau4: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("tau0", "tau1", "tau2", "tau3", "tau4"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    def as_tuple(self):
        return (self.tau0, self.tau1, self.tau2, self.tau3, self.tau4)

    def replace(self, **changes) -> "TauSet":
        vals = dict(zip(("tau0", "tau1", "tau2", "tau3", "tau4"), self.as_tuple()))
        vals.update(changes)
        return TauSet(**vals)


def big_qheun(d: HeunData) -> SkewOperator:
    """A1 = p3/x^2, A2 = (q p3 + x p2)/x^2, A0 = p1 - A1 - A2."""
    a1 = d.p3.shift_exponents(-2)
    a2 = (d.p3 * d.q + d.p2.shift_exponents(1)).shift_exponents(-2)
    return SkewOperator(d.q, {1: a1, -1: a2, 0: d.p1 - a1 - a2})


def monomial_image_closed_form(d: HeunData, n: int) -> LaurentPoly:
    """W x^n = (q^n - 1){(1 - q^(1-n)) p3 - q^-n x p2} x^(n-2) + p1 x^n."""
    q = d.q
    inner = d.p3 * (1 - q ** (1 - n)) - d.p2.shift_exponents(1) * q ** (-n)
    return (inner * (q ** n - 1)).shift_exponents(n - 2) + d.p1.shift_exponents(n)


def _rational_sqrt(v: Fraction):
    if v < 0:
        return None
    n, d = isqrt(v.numerator), isqrt(v.denominator)
    if n * n == v.numerator and d * d == v.denominator:
        return Fraction(n, d)
    return None


def little_qheun(s0, s1, s2, q, enforce: bool = False) -> SkewOperator:
    """(s1/x) T^+ + (s2/x) T^- + (s0/x) I with quadratic s_k.

    The operator raises degree by at most one iff s0 + s1 + s2 vanishes at 0.
    With ``enforce`` a violating operator is conjugated by mu (T^k -> mu^k T^k)
    where mu is a rational root of mu^2 s1(0) + mu s0(0) + s2(0) = 0.
    """
    q = as_rational(q)
    polys = []
    for name, s in (("s0", s0), ("s1", s1), ("s2", s2)):
        s = s if isinstance(s, LaurentPoly) else LaurentPoly.from_coeffs(s)
        if not s.is_polynomial() or (s and s.degree() > 2):
            raise NotHeunShape(f"{name} = {s} must be a polynomial of degree <= 2")
        polys.append(s)
    s0, s1, s2 = polys
    op = SkewOperator(q, {1: s1.shift_exponents(-1), -1: s2.shift_exponents(-1), 0: s0.shift_exponents(-1)})
    c0, c1, c2 = s0.coeff(0), s1.coeff(0), s2.coeff(0)
    if not enforce or c0 + c1 + c2 == 0:
        return op
    return op.conjugate_shiftscale(_sum_condition_scale(c0, c1, c2))


def _sum_condition_scale(c0, c1, c2) -> Fraction:
    """Rational mu != 0 with mu c1 + c2/mu + c0 = 0."""
    if c1 == 0:
        if c0 == 0 or c2 == 0:
            raise NoRationalScale("no nonzero mu cancels the constant terms")
        return -c2 / c0
    disc = c0 * c0 - 4 * c1 * c2
    root = _rational_sqrt(disc)
    if root is None:
        raise NoRationalScale(f"discriminant {disc} is not a rational square")
    candidates = [m for m in ((-c0 + root) / (2 * c1), (-c0 - root) / (2 * c1)) if m != 0]
    if not candidates:
        raise NoRationalScale("only mu = 0 cancels the constant terms")
    return candidates[0]


def algebraic_heun(p: Params, t: TauSet) -> SkewOperator:
    """tau1 XY + tau2 YX + tau3 X + tau4 Y + tau0, built by composition."""
    X_ = multiplication_operator(p.q)
    Y = big_qjacobi_operator(p)
    return (X_ * Y) * t.tau1 + (Y * X_) * t.tau2 + X_ * t.tau3 + Y * t.tau4 + t.tau0


def algebraic_heun_p1(p: Params, t: TauSet) -> LaurentPoly:
    q, a, b, c = p.q, p.a, p.b, p.c
    return LaurentPoly({
        1: t.tau2 * (q - 1) * (q * a * b - 1 / q) + t.tau3,
        0: t.tau0 + (1 - q) * (q * a * (b + c) - a - c) * t.tau2,
    })


def algebraic_heun_closed(p: Params, t: TauSet) -> SkewOperator:
    q, a, b, c = p.q, p.a, p.b, p.c
    a1 = (a * q) * LaurentPoly({1: 1, 0: -1}) * LaurentPoly({1: b, 0: -c}) \
        * LaurentPoly({1: t.tau1 + q * t.tau2, 0: t.tau4})
    a2 = LaurentPoly({1: 1, 0: -a * q}) * LaurentPoly({1: 1, 0: -c * q}) \
        * LaurentPoly({1: t.tau1 + t.tau2 / q, 0: t.tau4})
    a1, a2 = a1.shift_exponents(-2), a2.shift_exponents(-2)
    return SkewOperator(q, {1: a1, -1: a2, 0: algebraic_heun_p1(p, t) - a1 - a2})


def takemura_a3(u1, u2, u3, w1, w2, w3, kappa, q, sqrt_q=None) -> SkewOperator:
    """Takemura's third q-Heun operator with pre-exponentiated parameters.

    u_n = q^(h_n+1/2) t_n, w_n = q^(l_n-1/2) t_n and kappa is the full
    x^-1 prefactor.  The zero-shift part needs q^(1/2); pass ``sqrt_q`` or
    let it be computed when q is a rational square.
    """
    q = as_rational(q)
    rq = as_rational(sqrt_q) if sqrt_q is not None else _rational_sqrt(q)
    if rq is None or rq * rq != q:
        raise ValueError(f"need an exact square root of q = {q}")
    us = [as_rational(v) for v in (u1, u2, u3)]
    ws = [as_rational(v) for v in (w1, w2, w3)]
    down = LaurentPoly.from_roots(us).shift_exponents(-1)
    up = LaurentPoly.from_roots(ws).shift_exponents(-1)
    # sum (q^h_n + q^l_n) t_n = sum (u_n / rq + w_n rq)
    lin = sum(us) / rq + sum(ws) * rq
    zero = LaurentPoly({2: -(rq + 1 / rq), 1: lin, -1: as_rational(kappa)})
    return SkewOperator(q, {-1: down, 1: up, 0: zero})


def takemura_a4(u1, u2, w1, w2, rho, sigma1, sigma2, kappa, q) -> SkewOperator:
    """Takemura's fourth q-Heun operator; rho stands for q^(alpha1+alpha2), sigma_i for q^alpha_i."""
    q = as_rational(q)
    down = LaurentPoly.from_roots([u1, u2]).shift_exponents(-1)
    up = LaurentPoly.from_roots([w1, w2], lead=rho).shift_exponents(-1)
    zero = LaurentPoly({1: -(as_rational(sigma1) + as_rational(sigma2)), -1: -as_rational(kappa)})
    return SkewOperator(q, {-1: down, 1: up, 0: zero})


def _as_poly(rf: RatFunc, what: str) -> LaurentPoly:
    if not rf.is_laurent() or not rf.num.is_polynomial():
        raise NotHeunShape(f"{what} = {rf} is not a polynomial")
    return rf.num


def extract_heun_data(w: SkewOperator) -> HeunData:
    """Recover (p3, p2, p1) from an operator of big q-Heun shape."""
    extra = w.support() - {-1, 0, 1}
    if extra:
        raise NotHeunShape(f"shift degrees {sorted(extra)} outside {{-1, 0, 1}}")
    x2 = RatFunc(LaurentPoly.monomial(2))
    a1, a2, a0 = w.coeff(1), w.coeff(-1), w.coeff(0)
    p3 = _as_poly(a1 * x2, "A1 x^2")
    p2 = _as_poly((a2 * x2 - RatFunc(p3) * w.q) / RatFunc(X), "(A2 x^2 - q p3)/x")
    p1 = _as_poly(a0 + a1 + a2, "A0 + A1 + A2")
    return HeunData(p3, p2, p1, w.q)


def check_degree_raising(w: SkewOperator, n_max: int, data: HeunData | None = None) -> CheckReport:
    """deg W x^n <= n + 1 for 0 <= n <= n_max, plus the closed form when W has Heun shape."""
    if data is None:
        try:
            data = extract_heun_data(w)
        except NotHeunShape:
            data = None
    report = CheckReport("degree_raising")
    for n in range(n_max + 1):
        rec = CheckRecord("degree_raising", {"n": n})
        try:
            img = w.apply(LaurentPoly.monomial(n))
        except NonPolynomialResult as exc:
            rec.passed, rec.witness = False, exc.value
            report.add(rec)
            continue
        if img and (not img.is_polynomial() or img.degree() > n + 1):
            rec.passed = False
            rec.witness = img
            rec.detail["degree"] = img.degree()
        elif data is not None and img != monomial_image_closed_form(data, n):
            rec.passed = False
            rec.witness = img - monomial_image_closed_form(data, n)
            rec.detail["closed_form"] = "mismatch"
        report.add(rec)
    return report


def _pochhammer_action_matrices(p: Params, size: int):
    """Closed-form matrices of X and Y on phi_0..phi_size (column n = image of phi_n)."""
    q = p.q
    mx = [[Fraction(0)] * (size + 2) for _ in range(size + 2)]
    my = [[Fraction(0)] * (size + 2) for _ in range(size + 2)]
    for n in range(size + 1):
        mx[n][n] = q ** -n
        mx[n + 1][n] = -(q ** -n)
        my[n][n] = lambda_n(p, n)
        if n:
            my[n - 1][n] = mu_n(p, n)
    return mx, my


def _matmul(a, b):
    m = len(b[0])
    return [[sum((row[k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(m)] for row in a]


def predicted_pochhammer_band(p: Params, t: TauSet, n_max: int) -> dict:
    """(sub, diag, super) coefficients of the algebraic Heun operator on phi_n from the X/Y actions."""
    mx, my = _pochhammer_action_matrices(p, n_max + 1)
    xy, yx = _matmul(mx, my), _matmul(my, mx)
    size = len(mx)
    band = {}
    for n in range(n_max + 1):
        def entry(i):
            if i < 0 or i >= size:
                return Fraction(0)
            v = t.tau1 * xy[i][n] + t.tau2 * yx[i][n] + t.tau3 * mx[i][n] + t.tau4 * my[i][n]
            return v + (t.tau0 if i == n else 0)
        band[n] = (entry(n - 1), entry(n), entry(n + 1))
    return band


def xi(p: Params, t: TauSet, n: int) -> Fraction:
    return t.tau1 * lambda_n(p, n - 1) + t.tau2 * lambda_n(p, n) + t.tau3


def zeta(p: Params, t: TauSet, n: int) -> Fraction:
    return t.tau2 * lambda_n(p, n - 1) + t.tau1 * lambda_n(p, n) + t.tau3


def eta(p: Params, t: TauSet, n: int, b_n: Fraction) -> Fraction:
    lam = lambda_n(p, n)
    return (t.tau1 + t.tau2) * lam * b_n + t.tau3 * b_n + t.tau4 * lam + t.tau0


def check_tridiagonal(w: SkewOperator, basis: PolyFamily, n_max: int,
                      params: Params | None = None, taus: TauSet | None = None) -> CheckReport:
    """Expand W P_n in ``basis`` and require support in {n-1, n, n+1}.

    ``report.table[n] = (sub, diag, super)``.  Given ``params`` and ``taus``
    (W the algebraic Heun operator) the band is also compared with the closed
    forms: xi/eta/zeta u_n for big q-Jacobi, the X/Y action product for
    Pochhammer.
    """
    report = CheckReport(f"tridiagonal[{basis.kind}]")
    predicted = None
    if params is not None and taus is not None and basis.kind == "pochhammer":
        predicted = predicted_pochhammer_band(params, taus, n_max)
    for n in range(n_max + 1):
        rec = CheckRecord("tridiagonal", {"basis": basis.kind, "n": n})
        try:
            img = w.apply(basis[n])
            coeffs = basis.expand(img)
        except (NonPolynomialResult, ArithmeticError, ValueError) as exc:
            raise ExpansionFailure(f"cannot expand W P_{n}: {exc}") from exc
        stray = {m: c for m, c in enumerate(coeffs) if c and abs(m - n) > 1}
        band = tuple(coeffs[m] if 0 <= m < len(coeffs) else Fraction(0) for m in (n - 1, n, n + 1))
        report.table[n] = band
        if stray:
            rec.passed = False
            rec.witness = stray
        elif predicted is not None and band != predicted[n]:
            rec.passed = False
            rec.detail = {"fitted": band, "predicted": predicted[n]}
        elif params is not None and taus is not None and basis.kind == "bigqjacobi":
            b_n, u_n = recurrence_coeffs(params, n, basis)
            expect = (zeta(params, taus, n) * u_n if n else Fraction(0),
                      eta(params, taus, n, b_n),
                      xi(params, taus, n + 1))
            if band != expect:
                rec.passed = False
                rec.detail = {"fitted": band, "predicted": expect}
        report.add(rec)
    return report


def grid(q, N: int) -> list:
    q = as_rational(q)
    return [q ** -s for s in range(N + 1)]


def finite_restriction_matrix(w: SkewOperator, p: Params, N: int) -> list:
    """Matrix M with (W f)(x_s) = sum_s' M[s][s'] f(x_s') on x_s = q^-s, s = 0..N."""
    q = p.q
    if p.c != q ** (-N - 1):
        raise BoundaryLeak(f"c = {p.c} but the grid of size {N + 1} needs c = q^{-N - 1}")
    xs = grid(q, N)
    M = [[Fraction(0)] * (N + 1) for _ in range(N + 1)]
    for s, xv in enumerate(xs):
        for k, coef in w.coeffs.items():
            try:
                val = coef(xv)
            except ZeroDivisionError as exc:
                raise BoundaryLeak(f"coefficient of T^{k} has a pole at x_{s}") from exc
            target = s - k  # q^k x_s = x_(s-k)
            if not 0 <= target <= N:
                if val:
                    raise BoundaryLeak(f"T^{k} coefficient is {val} at x_{s}, leaving the grid")
                continue
            M[s][target] += val
    return M



def check_finite_restriction(w: SkewOperator, p: Params, N: int,
                             family: PolyFamily | None = None) -> CheckReport:
    """Grid matrix of W against op_apply on P_0..P_N, plus band structure.

    ``report.table["matrix"]`` holds the matrix.  A BoundaryLeak from the
    construction is recorded as a failure.
    """
    report = CheckReport("finite_restriction")
    rec = CheckRecord("finite_restriction.boundary", {"N": N})
    try:
        M = finite_restriction_matrix(w, p, N)
    except BoundaryLeak as exc:
        rec.passed = False
        rec.detail["error"] = str(exc)
        report.add(rec)
        return report
    report.add(rec)
    report.table["matrix"] = M
    band = CheckRecord("finite_restriction.tridiagonal", {"N": N})
    stray = {f"{i},{j}": M[i][j] for i in range(N + 1) for j in range(N + 1) if abs(i - j) > 1 and M[i][j]}
    if stray:
        band.passed, band.witness = False, stray
    report.add(band)
    fam = family or PolyFamily("bigqjacobi", p)
    xs = grid(p.q, N)
    for n in range(N + 1):
        P = fam[n]
        image = w.apply(P)
        samples = [P(x) for x in xs]
        lhs = [sum((M[s][j] * samples[j] for j in range(N + 1)), Fraction(0)) for s in range(N + 1)]
        rhs = [image(x) for x in xs]
        r = CheckRecord("finite_restriction.action", {"N": N, "n": n}, passed=lhs == rhs)
        if not r.passed:
            r.witness = [a - b for a, b in zip(lhs, rhs)]
        report.add(r)
    return report


def specialize_w1(p: Params, tau1, tau3, tau0) -> SkewOperator:
    """Case tau4 = 0, tau2 = -q tau1: no T^- part."""
    tau1 = as_rational(tau1)
    return algebraic_heun(p, TauSet(tau0=tau0, tau1=tau1, tau2=-p.q * tau1, tau3=tau3, tau4=0))


def specialize_w2(p: Params, tau1, tau3, tau0) -> SkewOperator:
    """Case tau4 = 0, tau2 = -tau1/q: no T^+ part."""
    tau1 = as_rational(tau1)
    return algebraic_heun(p, TauSet(tau0=tau0, tau1=tau1, tau2=-tau1 / p.q, tau3=tau3, tau4=0))


def w1_shift_coefficient(p: Params, tau1) -> LaurentPoly:
    q, a, b, c = p.q, p.a, p.b, p.c
    return (as_rational(tau1) * a * q * (1 - q * q) * LaurentPoly({1: 1, 0: -1})
            * LaurentPoly({1: b, 0: -c})).shift_exponents(-1)


def w2_shift_coefficient(p: Params, tau1) -> LaurentPoly:
    q, a, c = p.q, p.a, p.c
    return (as_rational(tau1) * (1 - q ** -2) * LaurentPoly({1: 1, 0: -c * q})
            * LaurentPoly({1: 1, 0: -a * q})).shift_exponents(-1)


def induced_quadratic(w: SkewOperator) -> LaurentPoly:
    """v(x) = x A0(x) for the degenerate operators W1, W2."""
    v = w.coeff(0) * RatFunc(X)
    return _as_poly(v, "x A0")


def qheun_from_little_data(r2: LaurentPoly, p2: LaurentPoly, p1: LaurentPoly, q) -> tuple:
    """(s0, s1, s2) of the little case p3 = x r2."""
    q = as_rational(q)
    s1 = r2
    s2 = r2 * q + p2
    s0 = p1.shift_exponents(1) - s1 - s2
    return s0, s1, s2



def little_data(w: SkewOperator) -> tuple:
    """(s0, s1, s2) of an operator whose coefficients are quadratics over x."""
    if w.support() - {-1, 0, 1}:
        raise NotHeunShape(f"shift degrees {sorted(w.support())} outside {{-1, 0, 1}}")
    out = []
    for k in (0, 1, -1):
        s = _as_poly(w.coeff(k) * RatFunc(X), f"x C_{k}")
        if s and s.degree() > 2:
            raise NotHeunShape(f"x C_{k} = {s} has degree > 2")
        out.append(s)
    return tuple(out)


def takemura_a4_to_little(w: SkewOperator) -> SkewOperator:
    """Conjugate an A<4>-shaped operator into the little q-Heun class."""
    s0, s1, s2 = little_data(w)
    return little_qheun(s0, s1, s2, w.q, enforce=True)


def normalize_takemura_a3(w: SkewOperator) -> SkewOperator:
    """Bring an A<3>-shaped operator to big q-Heun form.

    Conjugation by mu balances the constant terms of the two cubic numerators
    (mu^2 = u1 u2 u3 / (q w1 w2 w3)), then theta = 1/x and a constant shift
    clear the x^-1 part of A0 + A1 + A2.  The x^-2 part vanishes only when
    kappa = mu w1 w2 w3 + u1 u2 u3 / mu; otherwise NotHeunShape is raised.
    """
    up = _as_poly(w.coeff(1) * RatFunc(X), "x C_1")
    down = _as_poly(w.coeff(-1) * RatFunc(X), "x C_-1")
    wprod, uprod = -up.coeff(0), -down.coeff(0)
    if wprod == 0 or uprod == 0:
        mu = Fraction(1)
        if wprod != uprod:
            raise NoRationalScale("one constant term vanishes and the other does not")
    else:
        mu = _rational_sqrt(uprod / (w.q * wprod))
        if mu is None:
            raise NoRationalScale(f"mu^2 = {uprod / (w.q * wprod)} is not a rational square")
    conj = w.conjugate_shiftscale(mu)
    theta = RatFunc(LaurentPoly.monomial(-1))
    total = sum((c for c in conj.coeffs.values()), RatFunc.lift(0)) * theta
    beta = -total.as_laurent().coeff(-1)
    out = conj.affine(theta, 0, beta)
    extract_heun_data(out)
    return out


__all__ = [
    "HeunData", "TauSet", "big_qheun", "little_qheun", "algebraic_heun", "algebraic_heun_closed",
    "algebraic_heun_p1", "takemura_a3", "takemura_a4", "extract_heun_data", "check_degree_raising",
    "check_tridiagonal", "finite_restriction_matrix", "check_finite_restriction", "specialize_w1", "specialize_w2",
    "monomial_image_closed_form", "xi", "eta", "zeta", "grid", "induced_quadratic",
    "w1_shift_coefficient", "w2_shift_coefficient", "predicted_pochhammer_band",
    "qheun_from_little_data", "little_data", "takemura_a4_to_little", "normalize_takemura_a3",
]
