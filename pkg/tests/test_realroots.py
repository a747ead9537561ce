from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from polyzero.exactpoly import Poly
from polyzero.realroots import (
    AlgebraicReal,
    NotCertifiedError,
    OracleError,
    isolate_real_roots,
    oracle_all_roots,
    oracle_real_roots,
    real_roots,
    refine,
    sign_at,
)

X = sp.Symbol("x")


def desc(*cs):
    return Poly(list(reversed(cs)))


def test_rational_and_irrational_roots():
    roots = real_roots(desc(1, 0, -2) * desc(2, -1))
    assert [m for _, m in roots] == [1, 1, 1]
    assert roots[1][0].exact == F(1, 2)
    assert abs(float(roots[2][0]) - 2 ** 0.5) < 1e-15


def test_multiplicities():
    p = desc(1, 1) ** 2 * desc(1, 0, -3) ** 3 * desc(1, 0, 1)
    got = [(round(float(r), 9), m) for r, m in real_roots(p)]
    assert got == [(-1.732050808, 3), (-1.0, 2), (1.732050808, 3)]


def test_isolation_intervals():
    p = desc(3, 0, -4, 1)
    rl = isolate_real_roots(p, F(1, 1000))
    assert rl.multiplicity_total == 3 and rl.complex_pairs == 0
    assert [iv.kind for iv in rl] == ["open", "open", "point"]
    for iv in rl:
        assert iv.hi - iv.lo <= F(1, 1000)
    narrow = refine(p, rl[0], F(1, 10**9))
    assert narrow.lo < -1.2637626158 < narrow.hi


def test_repeated_root_isolates_to_a_point():
    rl = isolate_real_roots(desc(1, 2, 1))
    assert len(rl) == 1 and rl[0].kind == "point" and rl[0].multiplicity == 2 and rl[0].lo == -1


def test_algebraic_comparisons():
    sqrt2 = real_roots(desc(1, 0, -2))[1][0]
    sixth = real_roots(desc(1, 0, 0, 0, 0, 0, -8))[1][0]
    cbrt3 = real_roots(desc(1, 0, 0, -3))[0][0]
    assert sqrt2 == sixth
    assert sqrt2 < cbrt3 and cbrt3 > sqrt2
    assert sqrt2.compare_rational(F(141421, 100000)) > 0
    assert (-sqrt2).compare(real_roots(desc(1, 0, -2))[0][0]) == 0
    assert sqrt2.compare(float("inf")) < 0


def test_sign_and_vanishing_order():
    r = AlgebraicReal.rational(1)
    p = desc(1, -1) ** 2 * desc(1, 1)
    assert r.vanishing_order(p) == 2
    assert r.side_signs(p) == (1, 1)
    s = real_roots(desc(1, 0, -2))[1][0]
    assert s.sign_of(desc(1, -1)) == 1
    assert s.side_signs(desc(1, 0, -2)) == (-1, 1)
    assert sign_at(desc(1, 0, -2), F(3, 2)) == 1


def test_from_interval_certifies():
    p = desc(1, 0, -2)
    a = AlgebraicReal.from_interval(p, F(1), F(2))
    assert a == real_roots(p)[1][0]
    with pytest.raises(NotCertifiedError):
        AlgebraicReal.from_interval(p, F(-2), F(2))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=9).map(Poly).filter(lambda p: p.degree >= 1))
def test_real_roots_match_sympy(p):
    sp_roots = sp.Poly([int(c) for c in reversed(p.coeffs)], X).real_roots()
    ours = [float(r) for r, m in real_roots(p) for _ in range(m)]
    assert len(ours) == len(sp_roots)
    for a, b in zip(ours, sorted(float(r) for r in sp_roots)):
        assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


# oracle


def test_oracle_simple_cases():
    got = sorted(r.re for r in oracle_all_roots(desc(3, 0, -4, 1)))
    assert got == pytest.approx([-1.2637626158, 0.2637626158, 1.0], abs=1e-9)
    pair = oracle_all_roots(desc(1, 0, 1))
    assert sorted(r.im for r in pair) == pytest.approx([-1.0, 1.0])
    assert [r.re for r in oracle_all_roots(desc(1, -3, 3, -1))] == pytest.approx([1, 1, 1], abs=1e-4)


def test_oracle_clustered_roots_are_classified_real():
    p = desc(1, 1) ** 5 * desc(1, -1) ** 4
    roots = oracle_all_roots(p)
    assert all(r.im == 0.0 for r in roots)
    assert sorted(round(r.re, 6) for r in roots) == [-1.0] * 5 + [1.0] * 4


def test_oracle_real_roots_and_errors():
    assert oracle_real_roots(desc(1, 0, -4)) == pytest.approx([-2, 2])
    with pytest.raises(ValueError):
        oracle_all_roots(Poly())
    with pytest.raises(OracleError) as info:
        oracle_all_roots(desc(1, -3, 2), max_iter=1)
    assert len(info.value.best) == 2


def test_oracle_reports_exact_zeros():
    roots = oracle_all_roots(Poly([0, 0, -1, 1]))  # x^3 - x^2
    assert sorted((r.re, r.im) for r in roots)[:2] == [(0.0, 0.0), (0.0, 0.0)]
    assert oracle_all_roots(Poly([0, 0, 5])) == [oracle_all_roots(Poly([0, 1]))[0]] * 2
