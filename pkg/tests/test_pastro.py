from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qheun.errors import SingularParameters
from qheun.exact import ONE, X, LaurentPoly, RatFunc
from qheun.pastro import (PastroParams, is_little_shape, pastro_by_recurrence, pastro_family,
                          pastro_gevp_check, pastro_l1, pastro_l2, pastro_lambda,
                          pastro_recurrence_check, pastro_recurrence_fit, pastro_shape_check)
from qheun.skew import SkewOperator

from conftest import qs, rationals

F = Fraction


@st.composite
def pastro_params(draw, n_max=10):
    pp = PastroParams(draw(rationals(nonzero=True)), draw(rationals(nonzero=True)), draw(qs()))
    fam = pastro_family(pp)
    try:
        for n in range(n_max + 2):
            fam[n]
    except SingularParameters:
        assume(False)
    return pp


def test_params_guard():
    with pytest.raises(SingularParameters):
        PastroParams(0, 1, 2)
    with pytest.raises(ValueError):
        PastroParams(1, 1, 1)


def test_l1_at_q2_b1():
    L1 = pastro_l1(PastroParams(3, 1, 2))
    assert L1 == SkewOperator(2, {1: RatFunc(X - 2, X), 0: RatFunc(-X + 2, X)})


def test_supports_and_shape():
    pp = PastroParams(F(2, 3), F(-1, 2), 3)
    assert pastro_l1(pp).support() == {0, 1}
    assert pastro_l2(pp).support() == {-1, 0}
    assert is_little_shape(pastro_l1(pp), 1) and is_little_shape(pastro_l2(pp), 1)
    assert not is_little_shape(SkewOperator.multiplication(2, X * X))
    assert not is_little_shape(SkewOperator.shift(2, 2))
    assert pastro_shape_check(pp).passed


def test_lambda():
    assert pastro_lambda(PastroParams(1, 2, 2), 2) == 4
    assert pastro_lambda(PastroParams(1, 2, 3), 0) == F(1, 2)


def test_gevp_constant():
    pp = PastroParams(F(5, 3), F(2, 7), F(-4, 3))
    pencil = pastro_l1(pp) - pastro_l2(pp) * pastro_lambda(pp, 0)
    assert pencil.apply(ONE) == LaurentPoly()


def test_gevp_fails_for_wrong_eigenvalue():
    pp = PastroParams(F(5, 3), F(2, 7), 3)
    P = pastro_family(pp)[2]
    res = (pastro_l1(pp) - pastro_l2(pp) * pastro_lambda(pp, 3)).apply(P)
    assert res


def test_recurrence_fit_n1():
    pp = PastroParams(2, F(1, 3), 2)
    fam = pastro_family(pp)
    g, e = pastro_recurrence_fit(pp, 1)
    assert fam[2] + fam[1] * g == X * (fam[1] + fam[0] * e)
    assert fam[2].coeff(2) == 1
    with pytest.raises(ValueError):
        pastro_recurrence_fit(pp, 0)


def test_family_monic():
    fam = pastro_family(PastroParams(F(1, 2), 3, F(2, 5)))
    assert all(fam[n].degree() == n and fam[n].coeff(n) == 1 for n in range(8))


@given(pastro_params())
def test_gevp(pp):
    rep = pastro_gevp_check(pp, 10)
    assert rep.passed and len(rep.records) == 11


@given(pastro_params(n_max=8))
def test_recurrence_regenerates_family(pp):
    assert pastro_recurrence_check(pp, 8).passed
    fam = pastro_family(pp)
    assert pastro_by_recurrence(pp, 8) == [fam[n] for n in range(9)]


@given(pastro_params())
def test_shapes(pp):
    assert pastro_shape_check(pp).passed
