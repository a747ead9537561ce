"""Closed decision trees for a*x + 1, a*x^2 + b*x + 1 and a*x^3 + b*x^2 + c*x + 1.

Every comparison is exact: irrational thresholds are algebraic reals and are
compared through sign evaluation of their defining polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from fractions import Fraction
from typing import Optional

from .exactpoly import ParamPoly, Poly, as_rational, sign
from .realroots import (
    NEG_INF,
    POS_INF,
    AlgebraicReal,
    Endpoint,
    RootList,
    endpoint_compare,
    isolate_real_roots,
    real_roots,
)
from .report import ReportInterval, RootCountReport, count_set
from .tangency import TangencyData, tangency_set


def _neg_endpoint(e: Endpoint) -> Endpoint:
    return -e


class Verdict:
    """Collects exact root cells and turns them into a report."""

    def __init__(self, degree: int, method: str):
        self.degree = degree
        self.method = method
        self.cells: list[ReportInterval] = []
        self.log: list[str] = []
        self.markers: list[tuple[str, AlgebraicReal]] = []

    def cell(self, lo: Endpoint, hi: Endpoint, label: str = "", count: int = 1) -> None:
        self.cells.append(ReportInterval(lo, hi, "open", (count,), label))

    def point(self, x: AlgebraicReal, mult: int, label: str = "") -> None:
        self.cells.append(ReportInterval.at(x, mult, label))

    def note(self, text: str) -> None:
        self.log.append(text)

    def mark(self, name: str, x: Optional[AlgebraicReal]) -> None:
        if x is not None:
            self.markers.append((name, x))

    def mirrored(self) -> "Verdict":
        out = Verdict(self.degree, self.method)
        for iv in reversed(self.cells):
            lo, hi = _neg_endpoint(iv.hi), _neg_endpoint(iv.lo)
            out.cells.append(ReportInterval(lo, hi, iv.kind, iv.candidates, iv.label))
        out.log = list(self.log)
        out.markers = [(n, -v) for n, v in self.markers]
        return out

    def build(self) -> RootCountReport:
        neg = pos = zero = 0
        for iv in self.cells:
            k = iv.candidates[0]
            if endpoint_compare(iv.hi, AlgebraicReal.rational(0)) <= 0 and not (
                iv.kind != "open" and iv.lo.compare_rational(0) == 0
            ):
                neg += k
            elif endpoint_compare(iv.lo, AlgebraicReal.rational(0)) >= 0 and not (
                iv.kind != "open" and iv.lo.compare_rational(0) == 0
            ):
                pos += k
            else:
                zero += k
        real = neg + pos + zero
        if (self.degree - real) % 2 or real > self.degree:
            raise AssertionError("verdict does not account for the degree")
        cells = sorted(self.cells, key=cmp_to_key(cell_order))
        return RootCountReport(
            self.degree,
            (neg,),
            (pos,),
            zero,
            ((self.degree - real) // 2,),
            tuple(cells),
            tuple(self.log),
            self.method,
            tuple(self.markers),
        )


def cell_order(s: ReportInterval, t: ReportInterval) -> int:
    return endpoint_compare(s.lo, t.lo) or endpoint_compare(s.hi, t.hi)


def _rat(x) -> AlgebraicReal:
    return AlgebraicReal.rational(x)


def _zero() -> AlgebraicReal:
    return AlgebraicReal.rational(0)


def _roots(p: Poly) -> list[AlgebraicReal]:
    return [r for r, _ in real_roots(p)]


# ---------------------------------------------------------------------------
# degree 1 and 2


def classify_linear(a) -> RootCountReport:
    a = as_rational(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    v = Verdict(1, "lowdegree")
    v.point(_rat(-1 / a), 1, "x = -1/a")
    v.note(f"linear: the only root is -1/a = {-1 / a}, {'positive' if a < 0 else 'negative'} since a {'<' if a < 0 else '>'} 0")
    return v.build()


def classify_quadratic(a, b) -> RootCountReport:
    """Roots of a*x^2 + b*x + 1, positioned against +-1/sqrt(|a|)."""
    a, b = as_rational(a), as_rational(b)
    if a == 0:
        raise ValueError("a must be nonzero")
    v = Verdict(2, "lowdegree")
    s_neg, s_pos = _roots(Poly([-1, 0, abs(a)]))  # -+1/sqrt|a|
    v.mark("chi_minus", s_neg)
    v.mark("chi_plus", s_pos)
    if a > 0:
        disc = b * b - 4 * a
        v.note(f"a > 0: discriminant b^2 - 4a = {disc}")
        if disc < 0:
            v.note("no real roots (two complex)")
        elif disc == 0:
            chi = s_neg if b > 0 else s_pos
            v.point(chi, 2, "double root at -b/(2a)")
            v.note("b = -+2 sqrt(a): tangency, double root at chi = -+1/sqrt(a)")
        elif b > 0:
            v.cell(NEG_INF, s_neg, "x < -1/sqrt(a)")
            v.cell(s_neg, _zero(), "-1/sqrt(a) < x < 0")
            v.note("b > 2 sqrt(a): two negative roots split by -1/sqrt(a)")
        else:
            v.cell(_zero(), s_pos, "0 < x < 1/sqrt(a)")
            v.cell(s_pos, POS_INF, "x > 1/sqrt(a)")
            v.note("b < -2 sqrt(a): two positive roots split by 1/sqrt(a)")
    else:
        v.note("a < 0: roots of opposite signs")
        if b == 0:
            v.point(s_neg, 1, "-1/sqrt(-a)")
            v.point(s_pos, 1, "1/sqrt(-a)")
            v.note("b = 0: roots are exactly -+1/sqrt(-a)")
        elif b > 0:
            v.cell(s_neg, _zero(), "-1/sqrt(-a) < x < 0")
            v.cell(s_pos, POS_INF, "x > 1/sqrt(-a)")
            v.note("b > 0: the line bx lifts the right branch; positive root beyond 1/sqrt(-a)")
        else:
            v.cell(NEG_INF, s_neg, "x < -1/sqrt(-a)")
            v.cell(_zero(), s_pos, "0 < x < 1/sqrt(-a)")
            v.note("b < 0: negative root beyond -1/sqrt(-a)")
    return v.build()


# ---------------------------------------------------------------------------
# cubics


def _cube_point(a: Fraction) -> AlgebraicReal:
    """-(1/a)^(1/3): where a*x^3 + 1 crosses the axis (a > 0)."""
    return _roots(Poly([1, 0, 0, a]))[0]


def _cmp(a: Fraction, alpha: AlgebraicReal) -> int:
    """Sign of a - alpha."""
    return -alpha.compare_rational(a)


def classify_depressed_cubic(a, c) -> RootCountReport:
    """Roots of a*x^3 + c*x + 1."""
    a, c = as_rational(a), as_rational(c)
    if a == 0:
        raise ValueError("a must be nonzero")
    if a < 0:
        v = _depressed_positive_a(-a, -c)
        v.note("a < 0: reflected x -> -x, solved for (-a, -c), cells mirrored")
        return v.mirrored().build()
    return _depressed_positive_a(a, c).build()


def _depressed_positive_a(a: Fraction, c: Fraction) -> Verdict:
    v = Verdict(3, "lowdegree")
    t = _cube_point(a)
    v.mark("cube_root", t)
    if c == 0:
        v.point(t, 1, "x = -(1/a)^(1/3)")
        v.note("c = 0: pure cube, single real root -(1/a)^(1/3)")
        return v
    if c > 0:
        v.cell(t, _zero(), "-(1/a)^(1/3) < x < 0")
        v.note("a > 0, c > 0: one negative root right of -(1/a)^(1/3), two complex")
        return v
    alpha = -4 * c**3 / 27
    chi = _rat(-3 / (2 * c))
    v.mark("alpha", _rat(alpha))
    v.mark("chi", chi)
    v.cell(NEG_INF, t, "x < -(1/a)^(1/3)")
    v.note(f"a > 0, c < 0: negative root left of -(1/a)^(1/3); alpha* = -4c^3/27 = {alpha}, chi = -3/(2c) = {chi.exact}")
    s = sign(a - alpha)
    if s < 0:
        v.cell(_zero(), chi, "0 < x < chi")
        v.cell(chi, POS_INF, "x > chi")
        v.note("a < alpha*: two positive roots split by chi")
    elif s == 0:
        v.point(chi, 2, "double root chi")
        v.note("a = alpha*: double root at chi")
    else:
        v.note("a > alpha*: two complex roots")
    return v


@dataclass(frozen=True)
class CubicCase:
    octant: str  # signs of the given (a, b, c)
    subcase: str  # c^2 against 3b and 4b
    position: Optional[str]  # -c/b against -(1/a)^(1/3) after reflection: left/right/equal
    reflected: bool
    branch: str  # comparison of a with the alphas


@dataclass(frozen=True)
class CubicClassification:
    case_tag: CubicCase
    alpha_pair: tuple[TangencyData, ...]
    sigma_points: RootList
    verdict: RootCountReport


def _sgn_char(x: Fraction) -> str:
    return "+" if x > 0 else "-" if x < 0 else "0"


def _subcase(b: Fraction, c: Fraction) -> str:
    c2 = c * c
    if c2 == 3 * b:
        return "c2=3b"
    if c2 == 4 * b:
        return "c2=4b"
    if c2 > 4 * b:
        return "c2>4b"
    if c2 > 3 * b:
        return "3b<c2<4b"
    return "c2<3b"


def delta3(b, c) -> Poly:
    """Cubic discriminant of alpha*x^3 + b*x^2 + c*x + 1 as a polynomial in alpha."""
    b, c = as_rational(b), as_rational(c)
    return Poly([b * b * (c * c - 4 * b), 2 * c * (9 * b - 2 * c * c), -27])


def classify_cubic(a, b, c) -> CubicClassification:
    """Roots of a*x^3 + b*x^2 + c*x + 1 by octant, sub-case and alpha comparison."""
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    if a == 0:
        raise ValueError("a must be nonzero")
    octant = _sgn_char(a) + _sgn_char(b) + _sgn_char(c)
    pairs = tuple(tangency_set(ParamPoly(Poly([1, c, b]), 3)))
    sigmas = isolate_real_roots(Poly([1, c, b])) if b or c else RootList((), 0)
    if b == 0:
        verdict = classify_depressed_cubic(a, c)
        tag = CubicCase(octant, "depressed", None, a < 0, "b=0")
        return CubicClassification(tag, pairs, sigmas, verdict)
    reflected = a < 0
    ra, rc = (-a, -c) if reflected else (a, c)
    rpairs = pairs if not reflected else tuple(tangency_set(ParamPoly(Poly([1, rc, b]), 3)))
    v, position, branch = _cubic_positive_a(ra, b, rc, rpairs)
    if reflected:
        v.note("a < 0: reflected x -> -x, solved for (-a, b, -c), cells mirrored")
        v = v.mirrored()
    tag = CubicCase(octant, _subcase(b, c), position, reflected, branch)
    return CubicClassification(tag, pairs, sigmas, v.build())


def _cubic_positive_a(
    a: Fraction, b: Fraction, c: Fraction, pairs: tuple[TangencyData, ...]
) -> tuple[Verdict, Optional[str], str]:
    v = Verdict(3, "lowdegree")
    t = _cube_point(a)
    v.mark("cube_root", t)
    d = delta3(b, c)
    alphas = [r for r, _ in reversed(real_roots(d))]

    def chi_of(alpha: AlgebraicReal) -> AlgebraicReal:
        for tp in pairs:
            if tp.alpha.compare(alpha) == 0:
                return tp.chi
        raise AssertionError("alpha without real tangency point")

    for i, al in enumerate(alphas, 1):
        v.mark(f"alpha_{i}", al)
    sig = list(reversed(_roots(Poly([1, c, b]))))
    for i, s in enumerate(sig, 1):
        v.mark(f"sigma_{i}", s)
    d_at_a = sign(d(a))
    v.note(f"Delta3(a) sign {d_at_a:+d}; real alphas: {[round(x.approx(), 6) for x in alphas]}")
    if b > 0 and c > 0:
        pos, branch = _octant_ppp(v, a, b, c, t, alphas, chi_of, sig)
        return v, pos, branch
    if b > 0:
        return v, None, _octant_ppm(v, a, b, c, t, alphas, chi_of, sig)
    return v, None, _octant_pm(v, a, b, c, t, alphas, chi_of, sig)


def _branch(s: int, name: str) -> str:
    return {-1: f"a<{name}", 0: f"a={name}", 1: f"a>{name}"}[s]


def _octant_ppp(v, a, b, c, t, alphas, chi_of, sig):
    w = _rat(-c / b)
    v.mark("minus_c_over_b", w)
    rel = t.compare_rational(-c / b)
    c2 = c * c
    if rel > 0:
        v.note("-c/b < -(1/a)^(1/3), i.e. a > (b/c)^3")
        if c2 >= 4 * b:
            right = (sig[0], _zero(), "sigma < x < 0")
        else:
            right = (t, _zero(), "-(1/a)^(1/3) < x < 0")
        if c2 < 3 * b:
            v.cell(*right)
            v.note("c^2 < 3b: no real tangency; one negative root, two complex")
            return "left", "no-alpha"
        a1 = alphas[0]
        s = _cmp(a, a1)
        chi1 = chi_of(a1)
        v.mark("chi_1", chi1)
        if s < 0:
            v.cell(NEG_INF, chi1, "x < chi_1")
            v.cell(chi1, w, "chi_1 < x < -c/b")
            v.note("a < alpha_1: two negative roots split by chi_1, left of -c/b")
        elif s == 0:
            v.point(chi1, 2, "double root chi_1")
            v.note("a = alpha_1: double root at chi_1")
        else:
            v.note("a > alpha_1: two complex roots")
        v.cell(*right)
        return "left", _branch(s, "alpha_1")
    if rel < 0:
        v.note("-c/b > -(1/a)^(1/3), i.e. a < (b/c)^3")
        if c2 >= 4 * b:
            s1, s2 = sig[0], sig[-1]
            v.cell(NEG_INF, t, "x < -(1/a)^(1/3)")
            v.cell(w, s2, "-c/b < x < sigma_2")
            v.cell(s1, _zero(), "sigma_1 < x < 0")
            v.note("c^2 >= 4b: three negative roots")
            return "right", "three-negative"
        if c2 < 3 * b:
            v.cell(NEG_INF, t, "x < -(1/a)^(1/3)")
            v.note("c^2 < 3b: one negative root, two complex")
            return "right", "no-alpha"
        a2 = alphas[-1]
        s = _cmp(a, a2)
        if s < 0:
            v.cell(NEG_INF, t, "x < -(1/a)^(1/3)")
            v.note("a < alpha_2: one negative root, two complex")
        elif s == 0:
            chi2 = chi_of(a2)
            v.mark("chi_2", chi2)
            v.cell(NEG_INF, t, "x < -(1/a)^(1/3)")
            v.point(chi2, 2, "double root chi_2")
            v.note("a = alpha_2: double root at chi_2")
        else:
            chi1, chi2 = chi_of(alphas[0]), chi_of(a2)
            v.mark("chi_1", chi1)
            v.mark("chi_2", chi2)
            v.cell(NEG_INF, chi1, "x < chi_1")
            v.cell(chi1, chi2, "chi_1 < x < chi_2")
            v.cell(chi2, _zero(), "chi_2 < x < 0")
            v.note("alpha_2 < a < (b/c)^3: three negative roots split by chi_1, chi_2")
        return "right", _branch(s, "alpha_2")
    v.note("-c/b = -(1/a)^(1/3), i.e. a = (b/c)^3")
    if c2 < 3 * b:
        v.point(w, 1, "x = -c/b")
        v.note("c^2 < 3b: root exactly -c/b, two complex")
    elif c2 > 3 * b:
        v.cell(NEG_INF, w, "x < -c/b")
        v.point(w, 1, "x = -c/b")
        v.cell(w, _zero(), "-c/b < x < 0")
        v.note("c^2 > 3b: three negative roots around -c/b")
    else:
        v.point(_rat(-3 / c), 3, "triple root -3/c")
        v.note("c^2 = 3b: triple root at -3/c")
    return "equal", "a=(b/c)^3"


def _octant_ppm(v, a, b, c, t, alphas, chi_of, sig):
    v.cell(NEG_INF, t, "x < -(1/a)^(1/3)")
    if c * c <= 4 * b:
        v.note("c^2 <= 4b: no positive tangency; one negative root, two complex")
        return "no-alpha"
    a1 = alphas[0]
    chi = chi_of(a1)
    v.mark("chi", chi)
    s = _cmp(a, a1)
    if s < 0:
        s1, s2 = sig[0], sig[-1]
        v.cell(s2, chi, "sigma_2 < x < chi")
        v.cell(chi, s1, "chi < x < sigma_1")
        v.note("a < alpha_1: two positive roots split by chi between the sigmas")
    elif s == 0:
        v.point(chi, 2, "double root chi")
        v.note("a = alpha_1: positive double root at chi")
    else:
        v.note("a > alpha_1: two complex roots")
    return _branch(s, "alpha_1")


def _octant_pm(v, a, b, c, t, alphas, chi_of, sig):
    """b < 0: one negative root always, positives decided by alpha_1."""
    if c >= 0:
        v.cell(t, _zero(), "-(1/a)^(1/3) < x < 0")
        v.note("b < 0 <= c: one negative root right of -(1/a)^(1/3)")
    else:
        w = _rat(-c / b)
        v.mark("minus_c_over_b", w)
        rel = t.compare_rational(-c / b)
        if rel == 0:
            v.point(w, 1, "x = -c/b")
        elif rel < 0:
            v.cell(t, w, "-(1/a)^(1/3) < x < -c/b")
        else:
            v.cell(w, t, "-c/b < x < -(1/a)^(1/3)")
        v.note("b < 0, c < 0: negative root between -(1/a)^(1/3) and -c/b")
    a1 = alphas[0]
    chi = chi_of(a1)
    v.mark("chi", chi)
    s1 = sig[0]
    s = _cmp(a, a1)
    if s < 0:
        v.cell(s1, chi, "sigma_1 < x < chi")
        v.cell(chi, POS_INF, "x > chi")
        v.note("a < alpha_1: positive roots in (sigma_1, chi) and beyond chi")
    elif s == 0:
        v.point(chi, 2, "double root chi")
        v.note("a = alpha_1: positive double root at chi")
    else:
        v.note("a > alpha_1: two complex roots")
    return _branch(s, "alpha_1")
