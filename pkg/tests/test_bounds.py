from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyzero.bounds import (
    BulkBound,
    cauchy_bound,
    candidates_from_variations,
    descartes,
    interval_sign_bound,
    lagrange_bound,
    mobius_shift,
)
from polyzero.exactpoly import Poly, count_roots_with_multiplicity, evaluate, sturm_count
from polyzero.realroots import real_roots

NONIC = Poly(list(reversed([1, F(1, 2), -7, -2, 9, -1, -2, 13, 14, -24])))
CUBIC = Poly([1, -4, 0, 3])

int_polys = st.lists(st.integers(-20, 20), min_size=2, max_size=9).map(Poly).filter(lambda p: p.degree >= 1)


def test_candidates_from_variations():
    assert candidates_from_variations(5) == (5, 3, 1)
    assert candidates_from_variations(0) == (0,)


def test_descartes_nonic():
    d = descartes(NONIC)
    assert sorted(d.positive_candidates) == [1, 3, 5]
    assert sorted(d.negative_candidates) == [0, 2, 4]


def test_bulk_bounds_nonic():
    assert lagrange_bound(NONIC).radius == F(145, 2)
    assert cauchy_bound(NONIC).radius == 25


def test_cubic_baselines():
    d = descartes(CUBIC)
    assert sorted(d.positive_candidates) == [0, 2] and d.negative_candidates == (1,)
    assert lagrange_bound(CUBIC).radius == F(5, 3)
    assert cauchy_bound(CUBIC).radius == F(7, 3)


def test_descartes_skips_zero_roots():
    d = descartes(Poly([0, 0, -1, 1]))  # x^3 - x^2
    assert d.positive_candidates == (1,) and d.negative_candidates == (0,)


def test_bulkbound_validation():
    with pytest.raises(ValueError):
        BulkBound(F(-1), "cauchy")


def test_mobius_rejects_empty_interval():
    with pytest.raises(ValueError):
        mobius_shift(CUBIC, 1, 1)


@settings(max_examples=60, deadline=None)
@given(int_polys)
def test_bulk_bounds_contain_every_root(p):
    for bound in (lagrange_bound(p).radius, cauchy_bound(p).radius):
        for r, _ in real_roots(p):
            assert r.compare_rational(-bound) >= 0 and r.compare_rational(bound) <= 0


@settings(max_examples=60, deadline=None)
@given(int_polys, st.fractions(-5, 5, max_denominator=4), st.fractions(F(1, 4), 5, max_denominator=4))
def test_mobius_maps_interval_roots_to_positive_roots(p, a, w):
    b = a + w
    m = mobius_shift(p, a, b)
    # same root count, and the defining identity at a sample point
    assert count_roots_with_multiplicity(m, 0, float("inf")) == count_roots_with_multiplicity(p, a, b) - (
        1 if evaluate(p, b) == 0 else 0
    ) * real_root_multiplicity(p, b)
    x = F(3, 7)
    assert evaluate(m, x) == (1 + x) ** p.degree * evaluate(p, (a * x + b) / (x + 1))


def real_root_multiplicity(p, x):
    m = 0
    while p and evaluate(p, x) == 0:
        p = p // Poly([-x, 1])
        m += 1
    return m


@settings(max_examples=60, deadline=None)
@given(int_polys, st.fractions(-5, 5, max_denominator=4), st.fractions(F(1, 4), 5, max_denominator=4))
def test_interval_sign_bound_is_an_upper_bound(p, a, w):
    b = a + w
    inside = sum(m for r, m in real_roots(p) if r.compare_rational(a) > 0 and r.compare_rational(b) < 0)
    bound = interval_sign_bound(p, a, b)
    assert bound >= inside and (bound - inside) % 2 == 0
    assert interval_sign_bound(p, float("-inf"), b) >= sum(m for r, m in real_roots(p) if r.compare_rational(b) < 0)
    assert interval_sign_bound(p, a, float("inf")) >= sum(m for r, m in real_roots(p) if r.compare_rational(a) > 0)
    assert sturm_count(p, a, b) <= inside + (1 if evaluate(p, b) == 0 else 0)
