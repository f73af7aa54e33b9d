from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qheun.errors import ZeroScale
from qheun.exact import (ONE, X, LaurentPoly, RatFunc, as_rational, format_rational, lp_arith,
                         poly_gcd, rf_normalize, scale_substitute)
from qheun.linsolve import LinSystem, minimal_infeasible_subset, solve_exact

from conftest import laurent, polys, rationals

F = Fraction


def lp(*coeffs):
    return LaurentPoly.from_coeffs(list(coeffs))


def test_lp_arith_examples():
    assert lp_arith(X + 1, X - 1, "mul") == lp(-1, 0, 1)
    f = lp(3, 0, F(1, 2))
    assert lp_arith(LaurentPoly(), f, "add") == f
    assert lp_arith(lp(1, -1), lp(1, -2), "mul") == lp(1, -3, 2)
    assert lp_arith(f, f, "sub") == LaurentPoly()


def test_lp_arith_rejects_unknown_op():
    with pytest.raises(ValueError):
        lp_arith(X, X, "div")


def test_scale_substitute_examples():
    assert scale_substitute(lp(1, 0, 1), 2) == lp(1, 0, 4)
    f = LaurentPoly({-1: 3, 2: F(1, 7)})
    assert scale_substitute(f, 1) == f
    assert scale_substitute(LaurentPoly({-1: 1}), F(1, 2)) == LaurentPoly({-1: 2})


def test_scale_substitute_by_zero():
    assert scale_substitute(lp(5, 1), 0) == lp(5)
    with pytest.raises(ZeroScale):
        scale_substitute(LaurentPoly({-1: 1}), 0)


def test_rf_normalize_examples():
    assert rf_normalize(lp(-1, 0, 1), lp(-1, 1)) == RatFunc(lp(1, 1))
    assert rf_normalize(lp(0, 2), lp(4)) == RatFunc(lp(0, F(1, 2)))
    q = 2
    p3 = lp(0, 0, 0, 1)
    assert rf_normalize(p3 * q + X * LaurentPoly(), LaurentPoly.monomial(2)) == RatFunc(lp(0, 2))


def test_rf_normalize_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rf_normalize(X, LaurentPoly())


def test_ratfunc_canonical_form():
    r = RatFunc(lp(-2, 2), lp(0, 0, 3, -3))  # 2(x-1) / (-3x^2 (x-1))
    assert r.den == ONE and r.num == LaurentPoly({-2: F(-2, 3)})
    s = RatFunc(lp(1), lp(2, 1))
    assert s.den.leading_coeff() == 1 and s.den.coeff(0) == 2


def test_ratfunc_pole_evaluation():
    with pytest.raises(ZeroDivisionError):
        RatFunc(ONE, lp(-1, 1))(1)
    assert RatFunc(ONE, lp(-1, 1))(3) == F(1, 2)


def test_solve_exact_examples():
    assert solve_exact(LinSystem([[1, 0], [0, 1]], [3, 4])).particular == (3, 4)
    sol = solve_exact(LinSystem([[1, 1], [2, 2]], [1, 2]))
    assert sol.status == "parametric"
    assert sol.particular == (1, 0)
    assert sol.null_basis == ((-1, 1),)
    bad = LinSystem([[1, 1], [1, 1]], [1, 2])
    assert solve_exact(bad).status == "inconsistent"
    assert sorted(minimal_infeasible_subset(bad)) == [0, 1]


def test_minimal_infeasible_subset_drops_bystanders():
    sys_ = LinSystem([[1, 0], [0, 1], [1, 0], [0, 0]], [1, 5, 2, 0])
    assert sorted(minimal_infeasible_subset(sys_)) == [0, 2]


def test_as_rational_refuses_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("3/6") == F(1, 2)
    assert format_rational(F(-4, 6)) == "-2/3"
    assert format_rational(F(5)) == "5"


def test_poly_gcd_monic():
    g = poly_gcd((X - 1) * (X - 2) * 3, (X - 1) * (X + 5) * 7)
    assert g == X - 1


@given(laurent(), laurent(), rationals(nonzero=True))
def test_substitution_is_multiplicative(f, g, lam):
    assert scale_substitute(f * g, lam) == scale_substitute(f, lam) * scale_substitute(g, lam)


@given(laurent(lo=0), polys(max_deg=2).filter(bool))
def test_rf_normalize_idempotent(num, den):
    r = rf_normalize(num, den)
    assert rf_normalize(r.num, r.den) == r
    assert rf_normalize(r.numer_poly(), r.denom_poly()) == r


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_solution_set_contains_generator(rows, cols, data):
    A = [[data.draw(rationals()) for _ in range(cols)] for _ in range(rows)]
    v = [data.draw(rationals()) for _ in range(cols)]
    b = [sum((a * x for a, x in zip(row, v)), F(0)) for row in A]
    sol = solve_exact(LinSystem(A, b))
    assert sol.consistent and sol.contains(v)


@given(laurent(), laurent())
def test_ring_laws(f, g):
    assert f * g == g * f
    assert (f + g) - g == f
    assert f * (g + ONE) == f * g + f


@given(polys(), polys(max_deg=2).filter(lambda p: bool(p) and p.degree() >= 0))
def test_polynomial_division(f, g):
    quo, rem = f.divmod(g)
    assert quo * g + rem == f
    assert not rem or rem.degree() < g.degree()
