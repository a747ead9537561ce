import random
from fractions import Fraction as F

import pytest

from polyzero.exactpoly import ParamPoly, Poly, discriminant
from polyzero.realroots import oracle_all_roots, real_roots
from polyzero.report import validate_report
from polyzero.splits import (
    analyze_constant_split,
    analyze_leading_split,
    analyze_origin_split,
    analyze_recursive,
    choose_k,
    make_constant_split,
    make_leading_split,
    make_origin_split,
    sigma_set,
    tangency_set,
    with_zero_roots,
)

from goldens import INF, INNER_QUINTIC, NONIC, QUINTIC, SEPTIC, desc


def _f(e):
    return e if isinstance(e, float) else e.approx()


def cells(report):
    return [(_f(i.lo), _f(i.hi), i.candidates) for i in report.intervals]


def live(report):
    return [c for c in cells(report) if max(c[2]) > 0]


def roots_in(report, lo, hi, tol=1e-3):
    """Candidate total for roots in (lo, hi), summed over the cells inside it."""
    totals = {0}
    for a, b, cand in cells(report):
        if a >= lo - tol and b <= hi + tol:
            totals = {t + c for t in totals for c in cand}
    return sorted(totals)


def assert_sound(p, report):
    assert validate_report(p, report, oracle_all_roots(p)) == []


# split construction


def test_leading_split_shape():
    s = make_leading_split(desc(3, 0, -4, 1))
    assert s.q == desc(3, 0, 0, 1) and s.r == desc(4, 0)
    scaled = make_leading_split(desc(6, 0, -8, 2))
    assert scaled.normalized_input == desc(3, 0, -4, 1)
    with pytest.raises(ValueError, match="x\\^m"):
        make_leading_split(desc(1, -1, 0))


def test_origin_split_shape():
    s = make_origin_split(NONIC, 5)
    assert s.F == desc(1, F(1, 2), -7, -2, 9)
    assert s.g == desc(1, 2, -13, -14, 24)
    assert s.f - s.g == NONIC
    assert make_origin_split(SEPTIC, 1).g == Poly([-1])
    assert make_origin_split(NONIC, 8).g.degree == 7
    for k in (0, 9):
        with pytest.raises(ValueError):
            make_origin_split(NONIC, k)


def test_choose_k():
    assert choose_k(9) == 5
    assert [max(n - choose_k(n), choose_k(n) - 1) for n in (6, 7, 8, 9)] == [3, 3, 4, 4]


# tangency and sigma points


def test_quintic_tangency_pairs():
    pp = make_leading_split(QUINTIC).param
    pairs = tangency_set(pp)
    alphas = [t.alpha.approx() for t in pairs]
    chis = [t.chi.approx() for t in pairs]
    assert alphas == pytest.approx([0.02477, -0.01537, -0.08859, -0.24306], abs=1e-4)
    assert chis == pytest.approx([-5.6946, 1.1917, 2.3984, -1.2288], abs=1e-3)
    # each pair really is a double root of the instantiated family
    for t in pairs:
        inst = pp.instantiate(t.alpha.approx())
        assert abs(float(inst(F(t.chi.approx())))) < 1e-6


def test_cubic_tangency_pairs():
    pairs = tangency_set(ParamPoly(desc(0, 0, -4, 1), 3))
    assert [(t.alpha.exact, t.chi.exact) for t in pairs] == [(F(256, 27), F(3, 8))]
    two = tangency_set(ParamPoly(desc(0, 2, F(5, 2), 1), 3))
    assert [(t.alpha.exact, t.chi.exact) for t in two] == [(F(14, 27), F(-3, 2)), (F(1, 2), -1)]


def test_triple_tangency_is_flagged():
    # 8/27 x^3 + 4/3 x^2 + 2 x + 1 = (2x/3 + 1)^3
    pairs = tangency_set(ParamPoly(desc(0, F(4, 3), 2, 1), 3))
    assert [t.chi_multiplicity for t in pairs] == [3]


def test_sigma_sets():
    sig = sigma_set(make_leading_split(QUINTIC))
    assert sorted(iv.to_algebraic().approx() for iv in sig) == pytest.approx([-3.028, -0.965], abs=1e-3)
    assert F(-1, 2) in [iv.to_algebraic().exact for iv in sigma_set(make_leading_split(desc(1, 2, 3, 1)))]
    assert len(sigma_set(make_leading_split(desc(2, 0, 0, 1)))) == 0


# leading split


def test_quintic_leading_verdict():
    r = analyze_leading_split(QUINTIC)
    assert r.negative == (2,) and r.positive == (3,) and r.complex_pairs == (0,)
    assert roots_in(r, -3.028, -1.229) == [1]
    assert roots_in(r, -1.229, -0.965) == [1]
    assert roots_in(r, 0, 1.192) == [1]
    assert roots_in(r, 1.192, 2.398) == [1]
    assert roots_in(r, 2.398, INF) == [1]
    assert_sound(QUINTIC, r)


def test_leading_delegates_low_degree():
    r = analyze_leading_split(desc(3, 0, -4, 1))
    assert r.method == "leading" and r.positive == (2,) and r.negative == (1,)
    assert analyze_leading_split(desc(1, 1, 1)).complex_pairs == (1,)
    with pytest.raises(ValueError, match="analyze_recursive"):
        analyze_leading_split(SEPTIC)


def test_leading_uses_the_discriminant_sign():
    r = analyze_leading_split(QUINTIC)
    assert discriminant(QUINTIC) > 0
    assert any("discriminant sign +1" in d for d in r.deduction_log)


# origin split


def test_nonic_origin_split():
    r = analyze_origin_split(make_origin_split(NONIC, 5))
    got = live(r)
    assert [c[2] for c in got] == [(1,), (1,), (1,), (0, 2)]
    expect = [(-4, -2.416), (-2, -1.458), (0, 1), (1.145, 2.230)]
    for (lo, hi, _), (elo, ehi) in zip(got, expect):
        assert lo == pytest.approx(elo, abs=1e-3) and hi == pytest.approx(ehi, abs=1e-3)
    # none in (-2.416, -2), (-1.458, 0), beyond 2.230
    assert roots_in(r, -2.4165, -2) == [0] and roots_in(r, -1.4586, 0) == [0]
    assert roots_in(r, 2.2298, INF) == [0]
    assert "all real roots lie in (-4, 2.23)" in r.deduction_log
    assert_sound(NONIC, r)


def test_random_degree6_origin_splits():
    rng = random.Random(6)
    for _ in range(25):
        cs = [rng.randint(-9, 9) for _ in range(7)]
        cs[0], cs[-1] = cs[0] or 1, cs[-1] or 1
        p = Poly(cs)
        assert_sound(p, analyze_origin_split(make_origin_split(p, 3)))


# recursion


def test_inner_quintic_verdict():
    r = analyze_leading_split(INNER_QUINTIC)
    assert r.negative == (2,) and r.positive == (1,) and r.complex_pairs == (1,)
    chi = r.marker("chi_4").approx()
    assert chi == pytest.approx(-0.7533, abs=1e-3)
    assert roots_in(r, -INF, chi) == [1]
    assert roots_in(r, chi, -0.5595) == [1]
    rho = (F(17, 104)) ** (1 / 5)  # where q = 1 - 104/17 x^5 vanishes
    assert r.marker("q_1").approx() == pytest.approx(float(rho), abs=1e-9)
    assert roots_in(r, 0, float(rho)) == [1]
    assert_sound(INNER_QUINTIC, r)


def test_septic_recursion():
    r = analyze_recursive(SEPTIC)
    assert r.positive == (2, 4)
    lam = -(F(3, 16) ** (1 / 7))
    assert roots_in(r, -INF, lam) == [1]
    inner = roots_in(r, -0.5595, 0)
    assert set(inner) <= {0, 2} and 2 in inner
    assert roots_in(r, 0, 0.2611) == [0]
    assert_sound(SEPTIC, r)


def test_nonic_recursion_locks_the_roots():
    r = analyze_recursive(NONIC)
    assert r.method == "recursive"
    assert_sound(NONIC, r)
    assert any(d.startswith("all real roots lie in") for d in r.deduction_log)


def test_recursive_requires_nonzero_constant():
    with pytest.raises(ValueError):
        analyze_recursive(desc(1, 0, 0, 0, 0, 0, 1, 0))


def test_x6_minus_1():
    p = desc(1, 0, 0, 0, 0, 0, -1)
    r = analyze_recursive(p)
    assert 1 in r.positive and 1 in r.negative
    assert_sound(p, r)


# constant split


def test_constant_split_cubic():
    p = desc(3, 0, -4, 1)
    s = make_constant_split(p)
    assert s.monic_input == desc(1, 0, F(-4, 3), F(1, 3))
    assert s.gamma_discriminant.degree == 2
    gammas = [g.approx() for g, _ in real_roots(s.gamma_discriminant)]
    assert gammas[0] < 1 / 3 < gammas[1]
    r = analyze_constant_split(p)
    assert r.negative == (1,) and r.positive == (2,)
    assert_sound(p, r)


def test_constant_split_quadratic_and_pure_cube():
    r = analyze_constant_split(desc(1, 3, 2))  # gamma = 2 < 9/4
    assert r.negative == (2,)
    s = make_constant_split(desc(1, 0, 0, 5))
    assert [g.exact for g, _ in real_roots(s.gamma_discriminant)] == [0]
    r = analyze_constant_split(desc(1, 0, 0, 5))
    assert r.negative == (1,) and r.complex_pairs == (1,)


def test_constant_split_quintic():
    r = analyze_constant_split(QUINTIC)
    assert r.negative == (2,) and r.positive == (3,)
    assert len(r.markers_named("gamma_")) == 4
    assert_sound(QUINTIC, r)
    with pytest.raises(ValueError):
        analyze_constant_split(SEPTIC)


def test_with_zero_roots():
    base = analyze_leading_split(desc(1, -3, 2))
    lifted = with_zero_roots(base, 2)
    assert lifted.degree == 4 and lifted.zero_multiplicity == 2
    assert any(i.kind == "point" and i.candidates == (2,) for i in lifted.intervals)
    assert_sound(desc(1, -3, 2, 0, 0), lifted)


def test_random_soundness_small():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(2, 9)
        cs = [rng.randint(-20, 20) for _ in range(n + 1)]
        cs[0], cs[-1] = cs[0] or 3, cs[-1] or -2
        p = Poly(cs)
        assert_sound(p, analyze_recursive(p))
