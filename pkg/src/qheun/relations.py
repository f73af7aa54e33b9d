"""Exact checks of the q-Hahn and Heun-AW algebra relations, the four
degenerate cases, and a staged solver for the Z3-symmetric AW triple."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt

from .errors import InconsistentFit, SolverBlowup
from .exact import as_rational
from .families import Params, big_qjacobi_operator, multiplication_operator
from .heun import TauSet, algebraic_heun, specialize_w1, specialize_w2
from .linsolve import LinSystem, minimal_infeasible_subset, nullspace, rref, solve_exact
from .report import CheckRecord, CheckReport
from .skew import SkewOperator, anticommutator, coefficient_equations, commutator


def r_coefficient(q) -> Fraction:
    q = as_rational(q)
    return 2 - q - 1 / q


def qhahn_constants(p: Params) -> dict:
    q, a, b, c = p.q, p.a, p.b, p.c
    s = (q - 1) ** 2
    return {
        "r": r_coefficient(q),
        "xi1": -s * (a * b + 1 / q),
        "xi3": s * (a * b + a * c + a + c),
        "xi4": s * (a * b - 1) * (1 / q - q * a * b),
        "xi5": s * (a * b - 1) * (a * q * (b + c) - a - c),
        "xi6": Fraction(0),
        "xi7": -a * c * s * (q + 1),
    }


def verify_qhahn(p: Params) -> CheckReport:
    """Both q-Hahn relations for K1 = X, K2 = Y, K3 = [K1, K2]."""
    k = qhahn_constants(p)
    K1 = multiplication_operator(p.q)
    K2 = big_qjacobi_operator(p)
    K3 = commutator(K1, K2)
    I = SkewOperator.identity(p.q)
    rel1 = commutator(K2, K3) - (K2 * K1 * K2 * k["r"] + anticommutator(K1, K2) * k["xi1"]
                                  + K2 * k["xi3"] + K1 * k["xi4"] + I * k["xi5"])
    rel2 = commutator(K3, K1) - (K1 * K2 * K1 * k["r"] + K1 * K1 * k["xi1"]
                                  + K1 * k["xi3"] + K2 * k["xi6"] + I * k["xi7"])
    report = CheckReport("qhahn")
    inputs = {"q": p.q, "a": p.a, "b": p.b, "c": p.c}
    for name, res in (("qhahn[K2,K3]", rel1), ("qhahn[K3,K1]", rel2)):
        rec = CheckRecord(name, dict(inputs), passed=res.is_zero())
        if not rec.passed:
            rec.witness = res
        report.add(rec)
    report.table = k
    return report


# -- relation templates --------------------------------------------------------

def word_expr(*terms) -> tuple:
    """Signed sum of words: ``word_expr("YW", "WY")`` or ``word_expr((2, "YWY"), (-1, "YYW"))``."""
    out = []
    for t in terms:
        out.append((Fraction(1), t) if isinstance(t, str) else (as_rational(t[0]), t[1]))
    return tuple(out)


def evaluate_words(expr: tuple, gens: dict, q) -> SkewOperator:
    total = SkewOperator.zero(q)
    for coef, word in expr:
        op = SkewOperator.identity(q)
        for ch in word:
            if ch != "I":
                op = op * gens[ch]
        total = total + op * coef
    return total


@dataclass(frozen=True)
class RelationTemplate:
    """``lhs = sum slot_i * terms_i``; a slot is a fixed Rational or a str naming an unknown."""

    name: str
    lhs: tuple
    terms: tuple

    def __post_init__(self):
        for expr in (self.lhs, *(e for e, _ in self.terms)):
            for _, w in expr:
                if len(w) > 3 or set(w) - set("YWI"):
                    raise ValueError(f"bad word {w!r} in {self.name}")

    @property
    def unknowns(self) -> list:
        return [s for _, s in self.terms if isinstance(s, str)]

    def with_fixed(self, values: dict) -> "RelationTemplate":
        terms = tuple((e, as_rational(values[s]) if isinstance(s, str) and s in values else s)
                      for e, s in self.terms)
        return RelationTemplate(self.name, self.lhs, terms)

    def residual(self, gens: dict, q, values: dict) -> SkewOperator:
        out = evaluate_words(self.lhs, gens, q)
        for expr, slot in self.terms:
            coef = values[slot] if isinstance(slot, str) else slot
            if coef:
                out = out - evaluate_words(expr, gens, q) * coef
        return out


def heun_aw_templates(r, e: dict | None = None) -> tuple:
    """(RH1, RH2) with r fixed; e1..e4 fixed from ``e`` or left unknown."""
    e = e or {}
    slot = lambda name: as_rational(e[name]) if name in e else name  # noqa: E731
    YW = word_expr("YW", "WY")
    rh1 = RelationTemplate("RH1", word_expr((2, "YWY"), (-1, "YYW"), (-1, "WYY")), (
        (word_expr("YYY"), slot("e1")), (word_expr("YWY"), as_rational(r)),
        (word_expr("YY"), "s1"), (YW, "s2"), (word_expr("W"), "s3"),
        (word_expr("Y"), "s4"), (word_expr("I"), "s5")))
    rh2 = RelationTemplate("RH2", word_expr((2, "WYW"), (-1, "WWY"), (-1, "YWW")), (
        (word_expr("YWY"), slot("e2")), (word_expr("YYY"), slot("e3")), (word_expr("YY"), slot("e4")),
        (word_expr("WYW"), as_rational(r)), (word_expr("WW"), "s6"), (YW, "s7"),
        (word_expr("W"), "s8"), (word_expr("Y"), "s9"), (word_expr("I"), "s10")))
    return rh1, rh2


@dataclass
class FitResult:
    coefficients: dict = field(default_factory=dict)
    status: str = "consistent"
    null_dim: int = 0
    residual_zero: bool = True
    free: tuple = ()

    @property
    def consistent(self) -> bool:
        return self.status == "consistent"

    def to_json(self) -> dict:
        from .report import serialize
        return {"coefficients": serialize(self.coefficients), "status": self.status,
                "null_dim": serialize(self.null_dim), "residual_zero": self.residual_zero,
                "free": list(self.free)}


def fit_template(tpl: RelationTemplate, gens: dict, q, row_order: str = "ascending") -> FitResult:
    """Solve for the unknown slots of ``tpl`` exactly.

    A parametric solution keeps its particular part (free unknowns at 0) and
    lists the free names.  Raises InconsistentFit with a minimal infeasible
    subsystem labelled by (shift degree, x-power).
    """
    names = tpl.unknowns
    target = evaluate_words(tpl.lhs, gens, q)
    cols = []
    for expr, slot in tpl.terms:
        op = evaluate_words(expr, gens, q)
        if isinstance(slot, str):
            cols.append(op)
        elif slot:
            target = target - op * slot
    rows, labels = coefficient_equations(cols + [-target])
    if row_order == "descending":
        rows, labels = rows[::-1], labels[::-1]
    elif row_order != "ascending":
        raise ValueError(f"row_order must be 'ascending' or 'descending', got {row_order!r}")
    system = LinSystem([r[:-1] for r in rows], [-r[-1] for r in rows])
    sol = solve_exact(system)
    if not sol.consistent:
        subset = minimal_infeasible_subset(system)
        raise InconsistentFit(f"{tpl.name}: no exact fit ({len(subset)} conflicting equations)",
                              subsystem=tuple((system.matrix[i], system.rhs[i]) for i in subset),
                              labels=tuple(labels[i] for i in subset))
    values = dict(zip(names, sol.particular))
    free = tuple(n for j, n in enumerate(names) if j not in sol.pivots)
    residual = tpl.residual(gens, q, values)
    return FitResult(values, "consistent", len(sol.null_basis), residual.is_zero(), free)


def extra_coefficients(p: Params, t: TauSet, source: str = "published") -> dict:
    """r and e1..e4.

    ``"published"`` evaluates the printed formulas.  ``"derived"`` gives the
    values the realization actually satisfies: e2 carries an extra 1/q, and
    e4 has an overall -(1 - 1/q)^2 with 2q^2 - q + 2 in the tau4^2 term.
    """
    q, a, b, c = p.q, p.a, p.b, p.c
    t0, t1, t2, t4 = t.tau0, t.tau1, t.tau2, t.tau4
    r = r_coefficient(q)
    e1 = -t4 * r
    e2 = t4 * (1 - 1 / q) * (q ** 3 - 1)
    e3 = -t4 ** 2 * (1 + q ** 2) * (1 - 1 / q) ** 2
    mid = t4 * (1 + q + q * q) * (t0 + q * (t1 + t2) * (a + c + a * c + a * b))
    tail = a * c * (q + 1) * (q * q + q + 1) * (q * t1 + t2) * (t1 + q * t2)
    if source == "published":
        e4 = t4 ** 2 * (a * b * q + 1) * (2 - q + q * q) + mid + tail
    elif source == "derived":
        e2 = e2 / q
        e4 = -(1 - 1 / q) ** 2 * (t4 ** 2 * (a * b * q + 1) * (2 * q * q - q + 2) + mid + tail)
    elif source == "zero":
        e1 = e2 = e3 = e4 = Fraction(0)
    else:
        raise ValueError(f"unknown source {source!r}")
    return {"r": r, "e1": e1, "e2": e2, "e3": e3, "e4": e4}


def heun_aw_generators(p: Params, t: TauSet) -> dict:
    return {"Y": big_qjacobi_operator(p), "W": algebraic_heun(p, t)}


def fit_heun_aw(p: Params, t: TauSet, source: str = "published", free_extras: bool = False,
                row_order: str = "ascending") -> FitResult:
    """Fit s1..s10 with r and e1..e4 fixed (or e1..e4 fitted too when ``free_extras``)."""
    ext = extra_coefficients(p, t, "published" if free_extras else source)
    gens = heun_aw_generators(p, t)
    fixed = {} if free_extras else {k: v for k, v in ext.items() if k != "r"}
    out = FitResult()
    for tpl in heun_aw_templates(ext["r"], fixed):
        res = fit_template(tpl, gens, p.q, row_order)
        out.coefficients.update(res.coefficients)
        out.null_dim += res.null_dim
        out.residual_zero = out.residual_zero and res.residual_zero
        out.free += res.free
    return out


def compare_extras(p: Params, t: TauSet, source: str = "published") -> dict:
    """Fitted e1..e4 next to the formula values: {name: (fitted, formula)}."""
    fit = fit_heun_aw(p, t, free_extras=True)
    ext = extra_coefficients(p, t, source)
    return {k: (fit.coefficients[k], ext[k]) for k in ("e1", "e2", "e3", "e4")}


DEGENERATE_CASES = ("i", "ii", "iii", "iv")


def degenerate_inputs(p: Params, t: TauSet, case: str):
    if case == "i":
        return p, t.replace(tau4=0, tau2=-p.q * t.tau1)
    if case == "ii":
        return p, t.replace(tau4=0, tau2=-t.tau1 / p.q)
    if case == "iii":
        return p.replace(c=0), t.replace(tau4=0)
    if case == "iv":
        return p.replace(a=0), t.replace(tau4=0)
    raise ValueError(f"unknown case {case!r}")


def check_degenerations(p: Params, t: TauSet, include_generic: bool = True) -> CheckReport:
    """Cases (i)-(iv): every e_i vanishes and the pure AW fit is consistent.

    With ``include_generic`` a final record requires the pure AW fit to fail
    at (p, t) itself, i.e. the extra terms are really needed there.
    """
    report = CheckReport("degenerations")
    for case in DEGENERATE_CASES:
        pc, tc = degenerate_inputs(p, t, case)
        rec = CheckRecord(f"degeneration({case})", {"case": case, "params": _params_json(pc),
                                                     "taus": list(tc.as_tuple())})
        es = {src: extra_coefficients(pc, tc, src) for src in ("published", "derived")}
        nonzero = {f"{src}.{k}": v for src, d in es.items() for k, v in d.items() if k != "r" and v}
        try:
            fit = fit_heun_aw(pc, tc, source="zero")
            rec.detail["null_dim"] = fit.null_dim
            rec.passed = not nonzero and fit.residual_zero
        except InconsistentFit as exc:
            rec.passed = False
            rec.detail["error"] = str(exc)
        if nonzero:
            rec.witness = nonzero
        report.add(rec)
    if include_generic:
        rec = CheckRecord("degeneration(generic)", {"params": _params_json(p), "taus": list(t.as_tuple())})
        try:
            fit_heun_aw(p, t, source="zero")
            rec.passed = False
            rec.detail["error"] = "pure AW fit unexpectedly consistent"
        except InconsistentFit as exc:
            rec.detail["labels"] = list(exc.labels)
        report.add(rec)
    return report


def _params_json(p: Params) -> dict:
    return {"q": p.q, "a": p.a, "b": p.b, "c": p.c}


# -- Z3 triple ---------------------------------------------------------------

@dataclass
class NoSolution:
    reason: str
    residual: object = None
    progress: dict = field(default_factory=dict)

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        from .report import serialize
        return {"status": "no_solution", "reason": self.reason,
                "residual": serialize(self.residual), "progress": serialize(self.progress)}


@dataclass
class AWTriple:
    alpha: Fraction
    beta: Fraction
    w1_taus: tuple  # (tau1, tau3, tau0)
    w2_taus: tuple
    omegas: tuple
    W1: SkewOperator
    W2: SkewOperator
    Ytilde: SkewOperator
    linear_null_dim: int
    variety_dim: int

    def to_json(self) -> dict:
        from .report import serialize
        return serialize({
            "status": "solution", "alpha": self.alpha, "beta": self.beta,
            "w1_taus": list(self.w1_taus), "w2_taus": list(self.w2_taus),
            "omegas": list(self.omegas), "linear_null_dim": self.linear_null_dim,
            "variety_dim": self.variety_dim,
        })


DEFAULT_BUDGET = 24


def _rational_sqrt(v: Fraction):
    if v < 0:
        return None
    n, d = isqrt(v.numerator), isqrt(v.denominator)
    if n * n == v.numerator and d * d == v.denominator:
        return Fraction(n, d)
    return None


def triple_residuals(p: Params, W1, W2, Yt, omegas) -> tuple:
    q = p.q
    I = SkewOperator.identity(q)
    w1, w2, w3 = omegas
    return (Yt * W1 - W1 * Yt * q - W2 - I * w1,
            W1 * W2 - W2 * W1 * q - Yt - I * w2,
            W2 * Yt - Yt * W2 * q - W1 - I * w3)


def _leading_scale(p: Params):
    """(alpha^2, alpha*beta, beta^2) from the top-degree parts of the relations.

    On x^n the relations reduce to (L_{n+1} - q L_n)(L_n - q L_{n+1}) = 1 with
    L_n = alpha lambda_n + beta; n = 0, 1, 2 pin the three quadratic monomials.
    """
    from .families import lambda_n
    q = p.q
    rows, rhs = [], []
    for n in range(3):
        l0, l1 = lambda_n(p, n), lambda_n(p, n + 1)
        # (alpha u + beta v)(alpha s + beta w) with u = l1 - q l0, v = 1 - q, s = l0 - q l1, w = 1 - q
        u, v, s, w = l1 - q * l0, 1 - q, l0 - q * l1, 1 - q
        rows.append([u * s, u * w + v * s, v * w])
        rhs.append(1)
    return solve_exact(LinSystem(rows, rhs))


def solve_aw_triple(p: Params, budget: int = DEFAULT_BUDGET):
    """Find (W1, W2, alpha Y + beta, omegas) satisfying the three Z3 relations.

    Stage 1 fixes alpha, beta from the leading coefficients.  Stage 2 solves
    relations one and three, which are linear in the six taus and omega1,
    omega3.  Stage 3 imposes relation two, quadratic in the stage-2
    coordinates, which after eliminating omega2 is a binary conic; a rational
    point comes from factoring it or from a height search bounded by
    ``budget``.  Every returned solution is re-verified exactly.
    """
    progress: dict = {}
    scales = _scale_candidates(p)
    progress["scale_candidates"] = [list(c) for c in scales]
    if not scales:
        return NoSolution("no rational (alpha, beta) satisfies the leading-order equations",
                          progress=progress)
    failures = []
    for alpha, beta in scales:
        try:
            out = _solve_with_scale(p, alpha, beta, budget, dict(progress, alpha=alpha, beta=beta))
        except SolverBlowup as exc:
            failures.append(exc)
            continue
        if isinstance(out, AWTriple):
            return out
        failures.append(out)
    blowups = [f for f in failures if isinstance(f, SolverBlowup)]
    if blowups:
        raise blowups[0]
    last = failures[-1]
    return NoSolution("; ".join(f.reason for f in failures), residual=last.residual, progress=last.progress)


def _scale_candidates(p: Params) -> list:
    """Rational (alpha, beta) with alpha != 0 solving the leading-order system.

    The system is linear in (alpha^2, alpha beta, beta^2) but rank deficient;
    the rank-one condition (alpha beta)^2 = alpha^2 beta^2 cuts its solution
    line down to finitely many points.
    """
    sol = _leading_scale(p)
    if not sol.consistent:
        return []
    base = [list(sol.particular)]
    if len(sol.null_basis) == 1:
        (p1, p2, p3), (n1, n2, n3) = sol.particular, sol.null_basis[0]
        ts = _solve_quadratic(n2 * n2 - n1 * n3, 2 * p2 * n2 - p1 * n3 - n1 * p3, p2 * p2 - p1 * p3)
        base = [[p1 + t * n1, p2 + t * n2, p3 + t * n3] for t in ts]
    elif sol.null_basis:
        return []
    out = []
    for aa, ab_, bb in base:
        root = _rational_sqrt(aa)
        if not root or ab_ * ab_ != aa * bb:
            continue
        for alpha in (root, -root):
            if (alpha, ab_ / alpha) not in out:
                out.append((alpha, ab_ / alpha))
    return out


def _solve_with_scale(p: Params, alpha, beta, budget: int, progress: dict):
    q = p.q
    I = SkewOperator.identity(q)
    Yt = big_qjacobi_operator(p) * alpha + I * beta
    one = Fraction(1)
    w1_basis = [specialize_w1(p, one, 0, 0), specialize_w1(p, 0, one, 0), I]
    w2_basis = [specialize_w2(p, one, 0, 0), specialize_w2(p, 0, one, 0), I]
    zero = SkewOperator.zero(q)
    ops = ([Yt * B - B * Yt * q for B in w1_basis] + [-B for B in w2_basis] + [-I, zero])
    ops3 = ([-B for B in w1_basis] + [B * Yt - Yt * B * q for B in w2_basis] + [zero, -I])
    rows1, _ = coefficient_equations(ops)
    rows3, _ = coefficient_equations(ops3)
    basis = nullspace(rows1 + rows3, 8)
    progress["linear_null_dim"] = len(basis)
    if not basis:
        return NoSolution("relations one and three force W1 = W2 = 0", progress=progress)
    if len(basis) > 2:
        raise SolverBlowup(f"stage 2 left {len(basis)} free scales; only binary conics are handled",
                           progress=progress)

    def assemble(vec):
        W1 = sum((w1_basis[i] * vec[i] for i in range(3)), zero)
        W2 = sum((w2_basis[i] * vec[3 + i] for i in range(3)), zero)
        return W1, W2

    parts = [assemble(v) for v in basis]
    if len(basis) == 1:
        W1, W2 = parts[0]
        cols = [W1 * W2 - W2 * W1 * q, -I]
        nvars = 1
    else:
        Q = lambda i, j: parts[i][0] * parts[j][1] - parts[j][1] * parts[i][0] * q  # noqa: E731
        cols = [Q(0, 0), Q(0, 1) + Q(1, 0), Q(1, 1), -I]
        nvars = 3
    rows, _ = coefficient_equations(cols + [-Yt])
    # unknowns: quadratic monomials then omega2; eliminate omega2 first
    mat = [[r[nvars]] + r[:nvars] + [-r[nvars + 1]] for r in rows]
    reduced, pivots, _ = rref(mat, nvars + 1)
    conics = []
    for row, piv in zip(reduced, pivots):
        if piv != 0:
            conics.append((row[1:nvars + 1], row[nvars + 1]))
    for row in reduced[len(pivots):]:
        if row[nvars + 1]:
            return NoSolution("relation two is inconsistent with stages one and two", progress=progress)
    progress["conics"] = [list(c) + [k] for c, k in conics]
    if nvars == 1:
        # t^2 * m = K
        if not conics:
            return NoSolution("relation two leaves the scale undetermined", progress=progress)
        (m,), K = conics[0]
        t2 = K / m if m else None
        t = _rational_sqrt(t2) if t2 is not None else None
        if not t:
            return NoSolution(f"scale^2 = {t2} has no nonzero rational root", progress=progress)
        point = (t,)
    else:
        point = _conic_point(conics, budget, progress)
        if point is None:
            return NoSolution("conic has only the trivial point", progress=progress)
    vec = [sum((point[i] * basis[i][j] for i in range(len(basis))), Fraction(0)) for j in range(8)]
    W1, W2 = assemble(vec)
    if W1.is_zero():
        return NoSolution("only the trivial W1 = 0 survives", progress=progress)
    omega1, omega3 = vec[6], vec[7]
    # omega2 from the identity part of relation two
    omega2 = _identity_part(W1 * W2 - W2 * W1 * q - Yt)
    omegas = (omega1, omega2, omega3)
    res = triple_residuals(p, W1, W2, Yt, omegas)
    if any(not r.is_zero() for r in res):
        return NoSolution("candidate failed re-verification", residual=list(res), progress=progress)
    return AWTriple(alpha, beta, tuple(vec[0:3]), tuple(vec[3:6]), omegas, W1, W2, Yt,
                    len(basis), len(basis) - len(conics))


def _identity_part(op: SkewOperator) -> Fraction:
    c = op.coeff(0)
    if op.support() - {0} or not c.is_laurent() or set(c.num.terms) - {0}:
        return Fraction(0)
    return c.num.coeff(0)


def _conic_point(conics: list, budget: int, progress: dict):
    """Rational (t1, t2) != 0 on every A t1^2 + B t1 t2 + C t2^2 = K."""
    if not conics:
        return (Fraction(1), Fraction(0))

    def ok(t1, t2):
        return all(c[0] * t1 * t1 + c[1] * t1 * t2 + c[2] * t2 * t2 == k for c, k in conics)

    (A, B, C), K = conics[0]
    cands = _homogeneous_points(A, B, C) if K == 0 else _factored_points(A, B, C, K)
    for cand in cands:
        if ok(*cand):
            return cand
    return _search(ok, conics, budget, progress)


def _homogeneous_points(A, B, C):
    if A == 0:
        yield (Fraction(1), Fraction(0))
    elif C == 0:
        yield (Fraction(0), Fraction(1))
    root = _rational_sqrt(B * B - 4 * A * C)
    if root is not None and A:
        for r in ((-B + root) / (2 * A), (-B - root) / (2 * A)):
            yield (r, Fraction(1))


def _factored_points(A, B, C, K):
    """Points when the form splits over Q; u = 1 on one linear factor."""
    if A == 0 and C == 0:
        if B:
            yield (Fraction(1), K / B)
        return
    if A == 0:
        # t2 (B t1 + C t2) = K
        if B:
            yield ((K - C) / B, Fraction(1))
        else:
            t = _rational_sqrt(K / C)
            if t:
                yield (Fraction(0), t)
        return
    disc = B * B - 4 * A * C
    root = _rational_sqrt(disc)
    if root is None:
        return
    r1, r2 = (-B + root) / (2 * A), (-B - root) / (2 * A)
    if r1 == r2:
        # A (t1 - r1 t2)^2 = K
        t = _rational_sqrt(K / A)
        if t:
            yield (t, Fraction(0))
        return
    # A (t1 - r1 t2)(t1 - r2 t2) = K with t1 - r1 t2 = 1
    v = K / A
    t2 = (1 - v) / (r2 - r1)
    yield (1 + r1 * t2, t2)


def _search(ok, conics, budget, progress):
    """Height-bounded search: t1 = n/d with |n|, d <= budget, t2 from the first conic."""
    (A, B, C), K = conics[0]
    for h in range(1, budget + 1):
        for n, d in product(range(-h, h + 1), range(1, h + 1)):
            if max(abs(n), d) != h:
                continue
            t1 = Fraction(n, d)
            for t2 in _solve_quadratic(C, B * t1, A * t1 * t1 - K):
                if (t1 or t2) and ok(t1, t2):
                    return (t1, t2)
    raise SolverBlowup(f"no rational point of height <= {budget}", progress=progress)


def _solve_quadratic(a, b, c):
    if a == 0:
        return [-c / b] if b else []
    root = _rational_sqrt(b * b - 4 * a * c)
    if root is None:
        return []
    return [(-b + root) / (2 * a), (-b - root) / (2 * a)]


__all__ = [
    "r_coefficient", "qhahn_constants", "verify_qhahn", "RelationTemplate", "FitResult",
    "word_expr", "evaluate_words", "heun_aw_templates", "fit_template", "fit_heun_aw",
    "extra_coefficients", "compare_extras", "check_degenerations", "degenerate_inputs",
    "DEGENERATE_CASES", "NoSolution", "AWTriple", "solve_aw_triple", "triple_residuals",
    "DEFAULT_BUDGET",
]
