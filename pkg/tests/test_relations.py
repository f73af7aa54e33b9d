from fractions import Fraction

import pytest
from hypothesis import Phase, given, settings

from qheun.errors import InconsistentFit
from qheun.exact import LaurentPoly
from qheun.families import Params, lambda_n
from qheun.heun import TauSet, algebraic_heun
from qheun.linsolve import LinSystem, solve_exact
from qheun.relations import (AWTriple, NoSolution, check_degenerations, compare_extras,
                             degenerate_inputs, evaluate_words, extra_coefficients, fit_heun_aw,
                             heun_aw_generators, heun_aw_templates, qhahn_constants, r_coefficient,
                             solve_aw_triple, triple_residuals, verify_qhahn, word_expr)
from qheun.skew import SkewOperator

from conftest import generic_params, params, taus

F = Fraction
TRIPLE_SETS = [Params(2, F(1, 3), F(3, 4), F(1, 7)), Params(3, 2, 2, F(-1, 5)),
               Params(F(-1, 2), F(1, 5), F(5, 9), 3)]


def test_r_coefficient():
    assert r_coefficient(2) == F(-1, 2)


@given(params())
def test_qhahn_relations(p):
    rep = verify_qhahn(p)
    assert rep.passed and len(rep.records) == 2
    assert rep.table["xi6"] == 0


def test_qhahn_detects_wrong_constant(ref_params, monkeypatch):
    import qheun.relations as rel
    good = qhahn_constants(ref_params)
    monkeypatch.setattr(rel, "qhahn_constants", lambda p: dict(good, xi7=good["xi7"] + 1))
    rep = rel.verify_qhahn(ref_params)
    assert [r.passed for r in rep.records] == [True, False]
    assert rep.records[1].witness == SkewOperator.identity(ref_params.q) * -1


def test_published_extra_values(ref_params):
    e = extra_coefficients(ref_params, TauSet(tau4=3))
    assert e["e1"] == F(3, 2)
    assert extra_coefficients(ref_params, TauSet(tau4=1))["e3"] == F(-5, 4)


def test_word_evaluation(ref_params):
    gens = heun_aw_generators(ref_params, TauSet(1, 2, 3, 4, 5))
    Y, W = gens["Y"], gens["W"]
    lhs = evaluate_words(word_expr((2, "YWY"), (-1, "YYW"), (-1, "WYY")), gens, ref_params.q)
    assert lhs == Y * (W * Y - Y * W) - (W * Y - Y * W) * Y
    with pytest.raises(ValueError):
        heun_aw_templates(0)[0].__class__("bad", word_expr("YYYY"), ())


@settings(max_examples=6)
@given(generic_params(), taus())
def test_heun_aw_fit_with_derived_extras(p, t):
    fit = fit_heun_aw(p, t, source="derived")
    assert fit.consistent and fit.residual_zero and fit.null_dim == 0
    assert sorted(fit.coefficients, key=lambda s: int(s[1:])) == [f"s{i}" for i in range(1, 11)]


@settings(max_examples=6, phases=[Phase.explicit, Phase.reuse, Phase.generate])
@given(generic_params(), taus())
def test_heun_aw_fit_with_published_extras(p, t):
    # the published e2 and e4 do not satisfy the second relation; kept as the
    # faithful check so the discrepancy stays visible
    fit = fit_heun_aw(p, t, source="published")
    assert fit.consistent and fit.residual_zero


def test_published_fit_reports_second_relation(ref_params):
    t = TauSet(1, 2, 3, 4, 5)
    with pytest.raises(InconsistentFit) as info:
        fit_heun_aw(ref_params, t, source="published")
    assert str(info.value).startswith("RH2")
    assert info.value.labels and all(len(lab) == 2 for lab in info.value.labels)


def _monomial_fit(p, t, n_max=7):
    """Second relation with e2, e3, e4, s6..s10 unknown, matched on W^k x^n."""
    gens = heun_aw_generators(p, t)
    r = r_coefficient(p.q)
    lhs = evaluate_words(word_expr((2, "WYW"), (-1, "WWY"), (-1, "YWW")), gens, p.q)
    lhs = lhs - evaluate_words(word_expr("WYW"), gens, p.q) * r
    words = [word_expr("YWY"), word_expr("YYY"), word_expr("YY"), word_expr("WW"),
             word_expr("YW", "WY"), word_expr("W"), word_expr("Y"), word_expr("I")]
    ops = [evaluate_words(w, gens, p.q) for w in words]
    rows, rhs = [], []
    for n in range(n_max + 1):
        xn = LaurentPoly.monomial(n)
        images = [op.apply(xn) for op in ops]
        target = lhs.apply(xn)
        exps = set(target.terms).union(*(im.terms for im in images))
        for k in sorted(exps):
            rows.append([im.coeff(k) for im in images])
            rhs.append(target.coeff(k))
    return solve_exact(LinSystem(rows, rhs))


@pytest.mark.parametrize("p, t", [
    (Params(2, F(1, 3), F(1, 5), F(1, 7)), TauSet(1, 2, 3, 4, 5)),
    (Params(F(-3, 2), F(2, 7), -4, F(5, 3)), TauSet(F(1, 2), -1, F(3, 4), -2, 7)),
])
def test_derived_extras_two_routes(p, t):
    sol = _monomial_fit(p, t)
    assert sol.consistent and not sol.null_basis
    e2, e3, e4 = sol.particular[:3]
    derived = extra_coefficients(p, t, "derived")
    assert (e2, e3, e4) == (derived["e2"], derived["e3"], derived["e4"])
    fitted = compare_extras(p, t, "derived")
    assert all(a == b for a, b in fitted.values())
    published = extra_coefficients(p, t, "published")
    assert published["e2"] == derived["e2"] * p.q
    assert published["e1"] == fitted["e1"][0] and published["e3"] == fitted["e3"][0]


def test_fit_is_row_order_independent(ref_params):
    t = TauSet(F(1, 2), 3, -1, 2, F(5, 7))
    a = fit_heun_aw(ref_params, t, source="derived", row_order="ascending")
    b = fit_heun_aw(ref_params, t, source="derived", row_order="descending")
    assert a.coefficients == b.coefficients


def test_fit_residual_vanishes_after_substitution(ref_params):
    t = TauSet(2, -1, F(1, 3), 4, 0)
    gens = heun_aw_generators(ref_params, t)
    fit = fit_heun_aw(ref_params, t, source="derived")
    values = dict(fit.coefficients, **extra_coefficients(ref_params, t, "derived"))
    for tpl in heun_aw_templates(values["r"]):
        assert tpl.residual(gens, ref_params.q, values).is_zero()


def test_degeneration_inputs(ref_params):
    t = TauSet(1, 2, 3, 4, 5)
    _, t1 = degenerate_inputs(ref_params, t, "i")
    assert algebraic_heun(ref_params, t1).coeff(-1).num == LaurentPoly()
    p3, _ = degenerate_inputs(ref_params, t, "iii")
    assert p3.c == 0
    e = extra_coefficients(*degenerate_inputs(ref_params, t, "iii"))
    assert e["e4"] == 0


@settings(max_examples=4)
@given(generic_params(), taus())
def test_degenerations(p, t):
    if all(v == 0 for k, v in extra_coefficients(p, t, "derived").items() if k != "r"):
        return
    rep = check_degenerations(p, t)
    assert rep.passed, rep.first_failure
    assert [r.name for r in rep.records][-1] == "degeneration(generic)"


def test_generic_extras_nonzero(ref_params):
    e = extra_coefficients(ref_params, TauSet(1, 2, 3, 4, 5))
    assert any(e[k] for k in ("e1", "e2", "e3", "e4"))


@pytest.mark.parametrize("p", TRIPLE_SETS)
def test_aw_triple_solution_verifies(p):
    out = solve_aw_triple(p)
    assert isinstance(out, AWTriple)
    assert all(res.is_zero() for res in triple_residuals(p, out.W1, out.W2, out.Ytilde, out.omegas))
    Y = algebraic_heun(p, TauSet(tau4=1))
    assert out.Ytilde == Y * out.alpha + SkewOperator.identity(p.q) * out.beta
    # leading-order scale: (L_{n+1} - q L_n)(L_n - q L_{n+1}) = 1 with L_n = alpha lambda_n + beta
    for n in range(4):
        l0 = out.alpha * lambda_n(p, n) + out.beta
        l1 = out.alpha * lambda_n(p, n + 1) + out.beta
        assert (l1 - p.q * l0) * (l0 - p.q * l1) == 1


def test_aw_triple_epsilon_shift():
    p = TRIPLE_SETS[0]
    out = solve_aw_triple(p)
    eps = F(3, 11)
    I = SkewOperator.identity(p.q)
    res = triple_residuals(p, out.W1, out.W2 + I * eps, out.Ytilde, out.omegas)[0]
    assert res == I * -eps


def test_aw_triple_reference_parameters(ref_params):
    # ab = 1/15 is not a rational square, so alpha is irrational and no
    # rational triple exists; the check stays red on purpose
    out = solve_aw_triple(ref_params)
    assert isinstance(out, AWTriple), out.reason


def test_aw_triple_non_square_reports_reason(ref_params):
    out = solve_aw_triple(ref_params)
    assert isinstance(out, NoSolution) and not out
    assert "alpha" in out.reason
    assert out.to_json()["status"] == "no_solution"
