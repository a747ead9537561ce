from fractions import Fraction as F

import pytest
import sympy as sp
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings
from hypothesis import strategies as st

from polyzero.exactpoly import (
    ParamPoly,
    Poly,
    derivative,
    discriminant,
    discriminant_in_parameter,
    evaluate,
    gcd,
    render,
    resultant,
    sign,
    sign_at_rational,
    sign_variations,
    squarefree_decomposition,
    squarefree_part,
    sturm_count,
)

X = sp.Symbol("x")


def desc(*cs):
    return Poly(list(reversed(cs)))


def to_sympy(p: Poly):
    return sp.Poly(list(reversed([sp.Rational(c.numerator, c.denominator) for c in p.coeffs])), X)


small_rat = st.fractions(min_value=-20, max_value=20, max_denominator=9)
polys = st.lists(small_rat, min_size=2, max_size=8).map(Poly).filter(lambda p: p.degree >= 1)


def test_normalizes_trailing_zeros_and_degree():
    p = Poly([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert Poly().degree == -1 and not Poly()


def test_arithmetic():
    p, q = desc(1, -3, 2), desc(1, -1)
    assert p * q == desc(1, -4, 5, -2)
    quo, rem = divmod(p, q)
    assert quo == desc(1, -2) and not rem
    assert (p - p).is_zero()
    assert desc(1, 1) ** 3 == desc(1, 3, 3, 1)


def test_immutable():
    with pytest.raises(AttributeError):
        Poly([1]).coeffs = (2,)


def test_transforms():
    p = desc(1, 0, -2)  # x^2 - 2
    assert p.shift(1) == desc(1, 2, -1)
    assert p.mirror() == p
    assert desc(1, 1).mirror() == desc(-1, 1)
    assert p.reverse() == desc(-2, 0, 1)
    assert desc(3, 0, 0, 0).strip_zero_roots() == (Poly([3]), 3)


def test_render():
    assert render(desc(3, 0, -4, 1)) == "3 x^3 - 4 x + 1"
    assert render(desc(F(-1, 2), 1, 0)) == "-1/2 x^2 + x"
    assert render(Poly()) == "0"


def test_gcd_and_squarefree():
    a = desc(1, -1) ** 2 * desc(1, 2) ** 3
    assert gcd(a, derivative(a)) == (desc(1, -1) * desc(1, 2) ** 2).monic()
    assert squarefree_part(a) == (desc(1, -1) * desc(1, 2)).monic()
    dec = dict((m, f) for f, m in squarefree_decomposition(a))
    assert dec[2] == desc(1, -1) and dec[3] == desc(1, 2)


def test_discriminant_low_degree_formulas():
    b, c = F(3), F(-7)
    assert discriminant(desc(1, b, c)) == b * b - 4 * c
    # depressed cubic: -4p^3 - 27q^2
    assert discriminant(desc(1, 0, -4, 1)) == -4 * (-4) ** 3 - 27
    assert discriminant(desc(1, -2, 1)) == 0


def test_quintic_family_discriminant():
    # alpha x^5 + 1/4 x^4 + 5/12 x^3 - 5/4 x^2 - 1/3 x + 1
    base = desc(0, F(1, 4), F(5, 12), F(-5, 4), F(-1, 3), 1)
    d = discriminant_in_parameter(ParamPoly(base, 5))
    assert d == desc(3125, F(978851, 972), F(10519165, 186624), F(-1149707, 1119744), F(-76507, 2985984))


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_resultant_is_sylvester_determinant(p, q):
    # sympy.resultant disagrees in sign with the determinant for some inputs
    # (e.g. x + 1, x^3), so the matrix definition is the reference here
    expected = sylvester(to_sympy(p).as_expr(), to_sympy(q).as_expr(), X).det()
    assert resultant(p, q) == expected


@settings(max_examples=60, deadline=None)
@given(polys.filter(lambda p: p.degree >= 2))
def test_discriminant_matches_sympy(p):
    assert discriminant(p) == sp.discriminant(to_sympy(p), X)


@settings(max_examples=100, deadline=None)
@given(polys, small_rat)
def test_integer_sign_evaluation(p, x):
    assert sign_at_rational(p, x) == sign(evaluate(p, x))


@settings(max_examples=60, deadline=None)
@given(polys)
def test_sturm_counts_distinct_real_roots(p):
    expected = len(set(sp.real_roots(to_sympy(p))))
    assert sturm_count(p, float("-inf"), float("inf")) == expected


def test_sturm_half_open_convention():
    p = desc(1, 0, -1)
    assert sturm_count(p, -1, 1) == 1  # counts (lo, hi]
    assert sturm_count(p, F(-3, 2), 1) == 2


def test_sign_variations():
    assert sign_variations(desc(3, 0, -4, 1)) == 2
    assert sign_variations(Poly([1, 0, 0, 1])) == 0
