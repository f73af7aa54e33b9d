"""``qheun run --suite NAME``: seeded verification sweeps with exact JSON reports."""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .errors import ConfigError, QHeunError, SolverBlowup
from .exact import format_rational
from .families import (Params, PolyFamily, check_eigen_residuals, check_pochhammer_actions,
                       check_recurrence, big_qjacobi_operator, lambda_n, pastro_poly)
from .heun import (TauSet, algebraic_heun, algebraic_heun_closed, big_qheun, check_degree_raising,
                   check_finite_restriction, check_tridiagonal, extract_heun_data)
from .pastro import (PastroParams, pastro_gevp_check, pastro_lambda, pastro_recurrence_check,
                     pastro_shape_check)
from .relations import (DEFAULT_BUDGET, AWTriple, check_degenerations, compare_extras,
                        extra_coefficients, fit_heun_aw, solve_aw_triple, triple_residuals,
                        verify_qhahn)
from .report import CheckRecord, serialize

SUITES = ("qhahn", "heun-aw", "degenerations", "tridiagonal", "characterizations", "pastro",
          "aw-triple", "finite-matrix")
RATIONAL_KEYS = ("q", "a", "b", "c", "tau0", "tau1", "tau2", "tau3", "tau4", "pastro_a", "pastro_b")
INT_KEYS = ("trials", "seed", "nmax", "N", "budget")
DEFAULTS = {"trials": 10, "seed": 0, "nmax": 8, "N": 4, "budget": DEFAULT_BUDGET, "out": None}
MAX_DRAWS = 500


@dataclass
class RunConfig:
    suite: str
    values: dict = field(default_factory=dict)
    trials: int = 10
    seed: int = 0
    nmax: int = 8
    N: int = 4
    out: str | None = None
    budget: int = DEFAULT_BUDGET
    overridden: tuple = ()

    def echo(self) -> dict:
        return {
            "suite": self.suite,
            "values": {k: format_rational(v) for k, v in sorted(self.values.items())},
            "trials": str(self.trials), "seed": str(self.seed), "nmax": str(self.nmax),
            "N": str(self.N), "budget": str(self.budget), "overridden": list(self.overridden),
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qheun", description="Exact verification suites for q-Heun operators.")
    parser.add_argument("--version", action="version", version=f"qheun {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one verification suite")
    run.add_argument("--suite", help=" | ".join(SUITES))
    for key in RATIONAL_KEYS:
        run.add_argument("--" + key.replace("_", "-"), dest=key, metavar="P/Q")
    run.add_argument("--trials", type=int, help="random parameter sets (default 10)")
    run.add_argument("--seed", type=int, help="64-bit seed (default 0)")
    run.add_argument("--nmax", type=int, help="largest degree checked (default 8)")
    run.add_argument("--N", dest="N", type=int, help="finite grid size (default 4)")
    run.add_argument("--out", help="report path (default stdout)")
    run.add_argument("--budget", type=int, help=f"triple solver height bound (default {DEFAULT_BUDGET})")
    run.add_argument("--config", help="JSON file mirroring the flags; flags take precedence")
    sub.add_parser("suites", help="list suite names")
    return parser


def _parse_rational(key, token) -> Fraction:
    if isinstance(token, bool) or isinstance(token, float):
        raise ConfigError(f"{key}: {token!r} is not an exact rational; write it as a string 'p/q'")
    try:
        return Fraction(str(token).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{key}: cannot parse {token!r} as a rational") from None


def _load_file(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"config file {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    out = {}
    for k, v in data.items():
        key = k.replace("-", "_")
        if key not in RATIONAL_KEYS + INT_KEYS + ("suite", "out"):
            raise ConfigError(f"config file {path}: unknown key {k!r}")
        out[key] = v
    return out


def parse_config(argv=None, file_data: dict | None = None) -> RunConfig:
    """Flags override file values; all rationals are parsed exactly."""
    ns = build_parser().parse_args(argv)
    if ns.command != "run":
        raise ConfigError("parse_config expects the 'run' command")
    merged = dict(file_data or {})
    if ns.config:
        merged = {**_load_file(ns.config), **merged}
    overridden = []
    for key in RATIONAL_KEYS + INT_KEYS + ("suite", "out"):
        flag = getattr(ns, key, None)
        if flag is None:
            continue
        if key in merged and str(merged[key]) != str(flag):
            overridden.append(key)
        merged[key] = flag
    suite = merged.get("suite")
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    values = {k: _parse_rational(k, merged[k]) for k in RATIONAL_KEYS if merged.get(k) is not None}
    ints = {}
    for key in INT_KEYS:
        raw = merged.get(key, DEFAULTS[key])
        if isinstance(raw, bool) or not isinstance(raw, int):
            try:
                raw = int(str(raw))
            except ValueError:
                raise ConfigError(f"{key}: {raw!r} is not an integer") from None
        ints[key] = raw
    if ints["trials"] < 1:
        raise ConfigError("trials must be >= 1")
    if ints["nmax"] < 2:
        raise ConfigError("nmax must be >= 2")
    if ints["N"] < 1:
        raise ConfigError("N must be >= 1")
    if ints["budget"] < 1:
        raise ConfigError("budget must be >= 1")
    if not -(2 ** 63) <= ints["seed"] < 2 ** 64:
        raise ConfigError("seed must fit in 64 bits")
    if "q" in values and values["q"] in (0, 1, -1):
        raise ConfigError(f"q = {format_rational(values['q'])} is excluded (q must avoid 0 and +-1)")
    if suite == "pastro":
        # plain a/b stand for the Pastro parameters unless those are given too
        for short in ("a", "b"):
            if short in values:
                if "pastro_" + short in values:
                    overridden.append(short)
                values.setdefault("pastro_" + short, values.pop(short))
    for key in ("pastro_a", "pastro_b"):
        if suite == "pastro" and values.get(key) == 0:
            raise ConfigError(f"{key.replace('_', '-')} must be nonzero")
    if suite == "finite-matrix" and "c" in values:
        overridden.append("c")
        del values["c"]
    return RunConfig(suite=suite, values=values, overridden=tuple(overridden),
                     out=merged.get("out"), **ints)


# -- sampling -----------------------------------------------------------------

def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-10, 10), rng.randint(1, 10))


def _rational_square(v: Fraction) -> bool:
    from math import isqrt
    return v > 0 and isqrt(v.numerator) ** 2 == v.numerator and isqrt(v.denominator) ** 2 == v.denominator


def _draw(cfg: RunConfig, rng: random.Random, keys, build, guard=None):
    """Fill missing keys randomly until ``build`` succeeds and ``guard`` holds.

    ``guard`` is a degeneracy filter for random draws only; explicit values
    are taken as given once ``build`` accepts them.
    """
    last = None
    explicit = all(k in cfg.values for k in keys)
    for _ in range(1 if explicit else MAX_DRAWS):
        vals = {k: cfg.values[k] if k in cfg.values else random_rational(rng) for k in keys}
        try:
            obj = build(vals)
            if guard is None or explicit or guard(obj):
                return vals, obj
            last = "degeneracy guard rejected every draw"
        except (QHeunError, ValueError, ArithmeticError) as exc:
            last = str(exc)
    raise ConfigError(f"no admissible parameters for suite {cfg.suite}: {last}")


P_KEYS = ("q", "a", "b", "c")
T_KEYS = ("tau0", "tau1", "tau2", "tau3", "tau4")


def _params(v, n_max=16):
    return Params(v["q"], v["a"], v["b"], v["c"], n_max=n_max)


def _taus(v):
    return TauSet(*(v[k] for k in T_KEYS))


def _distinct_spectrum(p: Params, n: int) -> bool:
    lam = [lambda_n(p, m) for m in range(n + 1)]
    return len(set(lam)) == len(lam)


def _generic_heun(obj) -> bool:
    p, t = obj
    return (p.a and p.b and p.c and t.tau1 and t.tau4 and t.tau2 not in (-p.q * t.tau1, -t.tau1 / p.q)
            and _distinct_spectrum(p, 4))


def _from_report(name, inputs, report, table=False) -> CheckRecord:
    rec = CheckRecord(name, inputs, passed=report.passed)
    bad = report.first_failure
    if bad is not None:
        rec.witness = bad.to_json()
    if table and report.table:
        rec.detail["table"] = report.table
    return rec


# -- suites ---------------------------------------------------------------------

def suite_qhahn(cfg, rng):
    v, p = _draw(cfg, rng, P_KEYS, _params)
    rep = verify_qhahn(p)
    rec = _from_report("qhahn", v, rep)
    rec.detail["constants"] = rep.table
    return [rec]


def _heun_inputs(cfg, rng, guard=_generic_heun):
    return _draw(cfg, rng, P_KEYS + T_KEYS, lambda v: (_params(v), _taus(v)), guard)


def suite_heun_aw(cfg, rng):
    v, (p, t) = _heun_inputs(cfg, rng)
    out = []
    for source in ("published", "derived"):
        rec = CheckRecord(f"heun_aw.fit[{source}]", v)
        try:
            fit = fit_heun_aw(p, t, source=source)
            rec.passed = fit.residual_zero
            rec.detail["fit"] = fit
        except QHeunError as exc:
            rec.passed = False
            rec.detail["error"] = str(exc)
            rec.witness = [list(lbl) for lbl in getattr(exc, "labels", ())]
        out.append(rec)
    rec = CheckRecord("heun_aw.extras[published]", v)
    try:
        cmp = compare_extras(p, t, "published")
        derived = extra_coefficients(p, t, "derived")
        rec.passed = all(f == e for f, e in cmp.values())
        rec.detail = {k: {"fitted": f, "published": e, "derived": derived[k]} for k, (f, e) in cmp.items()}
    except QHeunError as exc:
        rec.passed = False
        rec.detail["error"] = str(exc)
    out.append(rec)
    rec = CheckRecord("heun_aw.order_independence", v)
    try:
        a = fit_heun_aw(p, t, source="derived")
        b = fit_heun_aw(p, t, source="derived", row_order="descending")
        rec.passed = (a.coefficients == b.coefficients and a.null_dim == b.null_dim == 0
                      and a.residual_zero and b.residual_zero)
    except QHeunError as exc:
        rec.passed = False
        rec.detail["error"] = str(exc)
    out.append(rec)
    return out


def suite_degenerations(cfg, rng):
    v, (p, t) = _heun_inputs(cfg, rng)
    out = []
    for r in check_degenerations(p, t).records:
        r.inputs = {**v, **serialize(r.inputs)}
        out.append(r)
    return out


def _tri_inputs(cfg, rng):
    guard = lambda obj: _distinct_spectrum(obj[0], cfg.nmax + 2)  # noqa: E731
    return _draw(cfg, rng, P_KEYS + T_KEYS,
                 lambda v: (_params(v, max(16, cfg.nmax + 2)), _taus(v)), guard)


def suite_tridiagonal(cfg, rng):
    v, (p, t) = _tri_inputs(cfg, rng)
    W = algebraic_heun(p, t)
    fam = PolyFamily("bigqjacobi", p)
    out = [
        _from_report("pochhammer_actions", v, check_pochhammer_actions(p, cfg.nmax)),
        _from_report("eigen_residual", v, check_eigen_residuals(p, cfg.nmax, fam)),
        _from_report("recurrence", v, check_recurrence(p, cfg.nmax, fam)),
    ]
    for kind, basis in (("pochhammer", PolyFamily("pochhammer", p)), ("bigqjacobi", fam)):
        try:
            rep = check_tridiagonal(W, basis, cfg.nmax, p, t)
            out.append(_from_report(f"tridiagonal[{kind}]", v, rep, table=True))
        except QHeunError as exc:
            out.append(CheckRecord(f"tridiagonal[{kind}]", v, False, detail={"error": str(exc)}))
    return out


def suite_characterizations(cfg, rng):
    v, (p, t) = _tri_inputs(cfg, rng)
    W = algebraic_heun(p, t)
    out = [CheckRecord("char(iii).closed_form", v, passed=W == algebraic_heun_closed(p, t))]
    try:
        data = extract_heun_data(W)
        out.append(CheckRecord("extract.roundtrip", v, passed=big_qheun(data) == W))
    except QHeunError as exc:
        data = None
        out.append(CheckRecord("extract.roundtrip", v, False, detail={"error": str(exc)}))
    out.append(_from_report("char(i).degree_raising", v, check_degree_raising(W, max(cfg.nmax, 12), data)))
    for label, kind in (("char(ii)", "pochhammer"), ("char(iv)", "bigqjacobi")):
        try:
            rep = check_tridiagonal(W, PolyFamily(kind, p), cfg.nmax, p, t)
            out.append(_from_report(f"{label}.tridiagonal[{kind}]", v, rep))
        except QHeunError as exc:
            out.append(CheckRecord(f"{label}.tridiagonal[{kind}]", v, False, detail={"error": str(exc)}))
    return out


def suite_pastro(cfg, rng):
    def build(v):
        pp = PastroParams(v["pastro_a"], v["pastro_b"], v["q"])
        Params(pp.q, 1, 1, 1, n_max=max(16, cfg.nmax + 2))
        return pp

    def guard(pp):
        try:
            pastro_poly(pp.a, pp.b, pp.q, cfg.nmax + 1)
            for n in range(cfg.nmax + 2):
                pastro_poly(pp.a, pp.b, pp.q, n)
        except QHeunError:
            return False
        return True

    v, pp = _draw(cfg, rng, ("pastro_a", "pastro_b", "q"), build, guard)
    out = [_from_report("pastro.gevp", v, pastro_gevp_check(pp, cfg.nmax))]
    lam_ok = all(pastro_lambda(pp, n) * (pp.q - 1) == pp.q ** n for n in range(cfg.nmax + 1))
    out.append(CheckRecord("pastro.lambda", v, passed=lam_ok,
                           detail={"lambda": [pastro_lambda(pp, n) for n in range(cfg.nmax + 1)]}))
    try:
        out.append(_from_report("pastro.recurrence", v, pastro_recurrence_check(pp, cfg.nmax)))
    except QHeunError as exc:
        out.append(CheckRecord("pastro.recurrence", v, False, detail={"error": str(exc)}))
    out.append(_from_report("pastro.shape", v, pastro_shape_check(pp, cfg.nmax)))
    return out


def suite_aw_triple(cfg, rng):
    # over Q the leading-order equations need ab to be a nonzero square
    guard = lambda p: p.a * p.b != 0 and _rational_square(p.a * p.b)  # noqa: E731
    v, p = _draw(cfg, rng, P_KEYS, _params, guard)
    rec = CheckRecord("aw_triple", v)
    try:
        sol = solve_aw_triple(p, cfg.budget)
    except SolverBlowup as exc:
        rec.passed = False
        rec.detail = {"error": str(exc), "progress": exc.progress}
        return [rec]
    if isinstance(sol, AWTriple):
        res = triple_residuals(p, sol.W1, sol.W2, sol.Ytilde, sol.omegas)
        rec.passed = all(r.is_zero() for r in res)
        rec.detail["solution"] = sol.to_json()
        if not rec.passed:
            rec.witness = list(res)
    else:
        rec.passed = False
        rec.detail["no_solution"] = sol.to_json()
    return [rec]


def suite_finite_matrix(cfg, rng):
    N = cfg.N

    def build(v):
        q = v["q"]
        return Params(q, v["a"], v["b"], q ** (-N - 1), n_max=max(16, N + 2)), _taus(v)

    guard = lambda obj: _distinct_spectrum(obj[0], N)  # noqa: E731
    v, (p, t) = _draw(cfg, rng, ("q", "a", "b") + T_KEYS, build, guard)
    v = {**v, "c": p.c}
    out = []
    fam = PolyFamily("bigqjacobi", p)
    for name, op in (("Y", big_qjacobi_operator(p)), ("W", algebraic_heun(p, t))):
        rep = check_finite_restriction(op, p, N, fam)
        rec = _from_report(f"finite_matrix[{name}]", {**v, "N": N}, rep)
        if "matrix" in rep.table:
            rec.detail["matrix"] = rep.table["matrix"]
        out.append(rec)
    return out


SUITE_FUNCS = {
    "qhahn": suite_qhahn, "heun-aw": suite_heun_aw, "degenerations": suite_degenerations,
    "tridiagonal": suite_tridiagonal, "characterizations": suite_characterizations,
    "pastro": suite_pastro, "aw-triple": suite_aw_triple, "finite-matrix": suite_finite_matrix,
}


def run_suite(cfg: RunConfig) -> tuple:
    """Run every trial of ``cfg.suite``; returns (report dict, exit code)."""
    func = SUITE_FUNCS[cfg.suite]
    records = []
    for trial in range(cfg.trials):
        # per-trial streams keep trials independent of one another
        rng = random.Random(f"{cfg.seed}:{cfg.suite}:{trial}")
        try:
            recs = func(cfg, rng)
        except ConfigError:
            raise
        except QHeunError as exc:
            recs = [CheckRecord(cfg.suite, {}, False, detail={"error": f"{type(exc).__name__}: {exc}"})]
        for idx, rec in enumerate(recs):
            out = rec.to_json()
            out["trial"] = str(trial)
            out["check"] = str(idx)
            records.append(out)
    failed = sum(r["status"] == "fail" for r in records)
    report = {
        "suite": cfg.suite,
        "config": cfg.echo(),
        "records": records,
        "summary": {"passed": len(records) - failed, "failed": failed},
        "version": __version__,
    }
    return report, (1 if failed else 0)


def render(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        if argv[:1] == ["suites"]:
            print("\n".join(SUITES))
            return 0
        cfg = parse_config(argv)
        report, code = run_suite(cfg)
    except ConfigError as exc:
        print(f"qheun: configuration error: {exc}", file=sys.stderr)
        return 2
    text = render(report)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    s = report["summary"]
    print(f"{cfg.suite}: {s['passed']} passed, {s['failed']} failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
