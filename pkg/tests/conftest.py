from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qheun.exact import LaurentPoly, RatFunc
from qheun.families import Params
from qheun.heun import TauSet
from qheun.skew import SkewOperator

settings.register_profile(
    "default", max_examples=30, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list = []


def rationals(bound=10, nonzero=False):
    s = st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))
    return s.filter(bool) if nonzero else s


def qs():
    return rationals(nonzero=True).filter(lambda q: q not in (1, -1))


@st.composite
def params(draw, n_max=16):
    return Params(draw(qs()), draw(rationals()), draw(rationals()), draw(rationals()), n_max=n_max)


@st.composite
def generic_params(draw):
    """Nonzero a, b, c and a simple spectrum up to degree 14."""
    p = Params(draw(qs()), draw(rationals(nonzero=True)), draw(rationals(nonzero=True)),
               draw(rationals(nonzero=True)))
    lam = [(p.q ** -n - 1) * (1 - p.a * p.b * p.q ** (n + 1)) for n in range(15)]
    if len(set(lam)) != len(lam):
        from hypothesis import reject
        reject()
    return p


@st.composite
def taus(draw):
    return TauSet(*(draw(rationals()) for _ in range(5)))


@st.composite
def laurent(draw, lo=-2, hi=3, max_terms=3):
    exps = draw(st.lists(st.integers(lo, hi), max_size=max_terms, unique=True))
    return LaurentPoly({e: draw(rationals(nonzero=True)) for e in exps})


@st.composite
def polys(draw, max_deg=3):
    return LaurentPoly.from_coeffs([draw(rationals()) for _ in range(draw(st.integers(0, max_deg)) + 1)])


@st.composite
def ratfuncs(draw):
    num = draw(laurent())
    root = draw(rationals(nonzero=True))
    if draw(st.booleans()):
        return RatFunc(num, LaurentPoly({1: 1, 0: -root}))
    return RatFunc(num)


@st.composite
def operators(draw, q=None, max_terms=3, rational=False):
    q = q if q is not None else draw(qs())
    ks = draw(st.lists(st.integers(-2, 2), min_size=1, max_size=max_terms, unique=True))
    coeff = ratfuncs() if rational else laurent()
    return SkewOperator(q, {k: draw(coeff) for k in ks})


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def ref_params():
    return Params(2, Fraction(1, 3), Fraction(1, 5), Fraction(1, 7))
