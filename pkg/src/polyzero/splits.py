"""The split analyses: leading, origin, constant-term, and the recursive driver."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import lowdegree
from .exactpoly import ParamPoly, Poly, discriminant, discriminant_in_parameter, sign
from .realroots import DEFAULT_WIDTH, AlgebraicReal, RootList, isolate_real_roots, real_roots
from .report import ReportInterval, RootCountReport
from .segments import Component, SegmentEngine
from .tangency import TangencyData, tangency_set

MAX_ANALYTIC_DEGREE = 5


@dataclass(frozen=True)
class LeadingSplit:
    q: Poly  # a_n x^n + 1
    r: Poly  # q - p, vanishes at 0
    normalized_input: Poly  # constant term 1

    @property
    def degree(self) -> int:
        return self.normalized_input.degree

    @property
    def param(self) -> ParamPoly:
        n = self.degree
        return ParamPoly(self.normalized_input - Poly.monomial(self.normalized_input.lc, n), n)


@dataclass(frozen=True)
class OriginSplit:
    k: int
    F: Poly
    g: Poly
    f_extremal_cap: int
    g_extremal_cap: int
    source: Poly

    @property
    def f(self) -> Poly:
        return Poly.monomial(1, self.k) * self.F


@dataclass(frozen=True)
class ConstantSplit:
    monic_input: Poly
    gamma_discriminant: Poly


def make_leading_split(p: Poly) -> LeadingSplit:
    if p.degree < 1:
        raise ValueError("leading split needs a non-constant polynomial")
    if p.tc == 0:
        raise ValueError(
            "constant term is zero: divide out the zero roots x^m first and split p / x^m"
        )
    norm = p.scale(1 / p.tc)
    q = Poly.monomial(norm.lc, norm.degree) + Poly.const(1)
    return LeadingSplit(q, q - norm, norm)


def make_origin_split(p: Poly, k: int) -> OriginSplit:
    n = p.degree
    if not 0 < k < n:
        raise ValueError(f"split index k must satisfy 0 < k < {n}")
    F = Poly(p.coeffs[k:])
    g = -Poly(p.coeffs[:k])
    return OriginSplit(k, F, g, n - 1, k - 2, p)


def make_constant_split(p: Poly) -> ConstantSplit:
    if p.degree < 2:
        raise ValueError("constant split needs degree >= 2")
    monic = p.monic()
    base = monic - Poly.const(monic.tc)
    return ConstantSplit(monic, discriminant_in_parameter(ParamPoly(base, 0)))


def sigma_set(split: LeadingSplit, width=DEFAULT_WIDTH) -> RootList:
    """Where the degree-dropped curve meets r = 1: roots of p minus its leading term."""
    rest = split.normalized_input - Poly.monomial(split.normalized_input.lc, split.degree)
    if rest.degree <= 0:
        return RootList((), max(rest.degree, 0))
    return isolate_real_roots(rest, width)


def _with_method(report: RootCountReport, method: str, notes: tuple[str, ...] = ()) -> RootCountReport:
    return dataclasses.replace(report, method=method, deduction_log=notes + report.deduction_log)


def _relevant_pairs(pairs: list[TangencyData], lead: Fraction) -> list[TangencyData]:
    return [t for t in pairs if t.alpha.compare_rational(0) * sign(lead) > 0]


# ---------------------------------------------------------------------------
# leading split


def analyze_leading_split(p: Poly, width=DEFAULT_WIDTH) -> RootCountReport:
    n = p.degree
    if n > MAX_ANALYTIC_DEGREE:
        raise ValueError(f"degree {n} > {MAX_ANALYTIC_DEGREE}: use analyze_recursive")
    split = make_leading_split(p)
    norm = split.normalized_input
    notes = (f"leading split: q = {split.q}, r = {split.r}",)
    if n == 1:
        return _with_method(lowdegree.classify_linear(norm.lc), "leading", notes)
    if n == 2:
        return _with_method(lowdegree.classify_quadratic(norm.coeff(2), norm.coeff(1)), "leading", notes)
    if n == 3:
        cls = lowdegree.classify_cubic(norm.coeff(3), norm.coeff(2), norm.coeff(1))
        return _with_method(cls.verdict, "leading", notes)
    lead = norm.lc
    pairs = tangency_set(split.param)
    delta = discriminant_in_parameter(split.param)
    log = list(notes)
    log.append(f"discriminant in alpha: {delta}")
    extras: list[tuple[str, AlgebraicReal]] = []
    for i, t in enumerate(pairs, 1):
        pos = t.alpha.compare_rational(lead)
        rel = "=" if pos == 0 else (">" if pos > 0 else "<")
        log.append(f"alpha_{i} ~ {t.alpha.approx():.6g} (chi_{i} ~ {t.chi.approx():.6g}); a_n {_flip(rel)} alpha_{i}")
    for i, t in enumerate(pairs, 1):
        if t.alpha.compare_rational(0) * sign(lead) > 0:
            extras.append((f"chi_{i}", t.chi))
    sig = sigma_set(split)
    for i, iv in enumerate(sig, 1):
        extras.append((f"sigma_{i}", iv.to_algebraic()))
    engine = SegmentEngine(
        norm,
        Component.exact("q", split.q, "q"),
        Component.exact("r", split.r, "r"),
        extras,
        use_discriminant=True,
        method="leading",
        log=log,
    )
    report = engine.run()
    alpha_markers = tuple((f"alpha_{i}", t.alpha) for i, t in enumerate(pairs, 1))
    return dataclasses.replace(report, markers=alpha_markers + report.markers)


def _flip(rel: str) -> str:
    return {"<": ">", ">": "<", "=": "="}[rel]


# ---------------------------------------------------------------------------
# origin split


def analyze_origin_split(split: OriginSplit, width=DEFAULT_WIDTH) -> RootCountReport:
    if not split.F or not split.g:
        raise ValueError("origin split needs nonzero F and g")
    log = [
        f"origin split k = {split.k}: f = x^{split.k} ({split.F}), g = {split.g}",
        f"extremal caps: f up to {split.f_extremal_cap}, g up to {max(split.g_extremal_cap, 0)} turning points",
    ]
    fcomp = Component.exact("f", split.f, "f")
    gcomp = Component.exact("g", split.g, "g")
    engine = SegmentEngine(split.source, fcomp, gcomp, method="origin", log=log)
    report = engine.run()
    return _lock_note(report)


def _lock_note(report: RootCountReport) -> RootCountReport:
    """Record the outermost cells that can still hold roots."""
    live = [iv for iv in report.intervals if max(iv.candidates) > 0]
    if not live:
        return report
    lo, hi = live[0].lo, live[-1].hi
    fl = lambda e: f"{e:.4g}" if isinstance(e, float) else f"{e.approx():.4g}"
    note = f"all real roots lie in ({fl(lo)}, {fl(hi)})" if live[0].kind == "open" else ""
    if live[0].kind != "open" or live[-1].kind != "open":
        note = f"all real roots lie in [{fl(lo)}, {fl(hi)}]"
    return dataclasses.replace(report, deduction_log=report.deduction_log + (note,))


# ---------------------------------------------------------------------------
# constant split


def analyze_constant_split(p: Poly, width=DEFAULT_WIDTH) -> RootCountReport:
    n = p.degree
    if n > MAX_ANALYTIC_DEGREE:
        raise ValueError(f"degree {n} > {MAX_ANALYTIC_DEGREE}: use analyze_recursive")
    if n < 2:
        raise ValueError("constant split needs degree >= 2")
    split = make_constant_split(p)
    monic = split.monic_input
    a0 = monic.tc
    base = monic - Poly.const(a0)
    log = [f"constant split: x^{n} + a0 = -({base - Poly.monomial(1, n)}), a0 = {a0}",
           f"gamma discriminant: {split.gamma_discriminant}"]
    gammas = [r for r, _ in real_roots(split.gamma_discriminant)] if split.gamma_discriminant.degree > 0 else []
    for i, g in enumerate(gammas, 1):
        rel = g.compare_rational(a0)
        log.append(f"gamma_{i} ~ {g.approx():.6g}; a0 {'=' if rel == 0 else '<' if rel > 0 else '>'} gamma_{i}")
    extras: list[tuple[str, AlgebraicReal]] = []
    pairs = tangency_set(ParamPoly(base, 0))
    for i, t in enumerate(pairs, 1):
        extras.append((f"chi_{i}", t.chi))
    core, _ = base.strip_zero_roots()
    if core.degree > 0:
        for i, (r, _) in enumerate(real_roots(core), 1):
            extras.append((f"sigma_{i}", r))
    A = Poly.monomial(1, n) + Poly.const(a0)
    B = -(base - Poly.monomial(1, n))
    engine = SegmentEngine(
        monic,
        Component.exact("x^n+a0", A, "root"),
        Component.exact("-middle", B, "m"),
        extras,
        use_discriminant=True,
        method="constant",
        log=log,
    )
    report = engine.run()
    return dataclasses.replace(report, markers=tuple((f"gamma_{i}", g) for i, g in enumerate(gammas, 1)) + report.markers)


# ---------------------------------------------------------------------------
# recursion


def choose_k(n: int) -> int:
    """Origin-split index balancing the two sub-degrees n - k and k - 1."""
    return min(range(1, n), key=lambda k: (max(n - k, k - 1), k))


def _component_from_report(name: str, poly: Poly, report: RootCountReport, prefix: str) -> Component:
    comp = Component(name, poly)
    i = 0
    for iv in report.intervals:
        if max(iv.candidates) == 0:
            continue
        if iv.kind != "open":
            i += 1
            comp.points.append((f"{prefix}_{i}", iv.lo))
        else:
            comp.zones.append((iv.lo, iv.hi))
    for mname, x in report.markers:
        if not mname.startswith(("alpha_", "gamma_")):
            comp.marks.append((f"{prefix}.{mname}", x))
    return comp


def _zero_component(name: str, poly: Poly, prefix: str, width) -> Component:
    """Component description of ``poly`` from a recursive analysis of its nonzero roots."""
    if poly.degree <= 0:
        return Component(name, poly)
    core, m = poly.strip_zero_roots()
    comp = Component(name, poly)
    if m:
        comp.points.append((f"{prefix}_0", AlgebraicReal.rational(0)))
    if core.degree > 0:
        sub = analyze_recursive(core, width)
        inner = _component_from_report(name, core, sub, prefix)
        comp.points += inner.points
        comp.zones += inner.zones
        comp.marks += inner.marks
    return comp


def analyze_recursive(p: Poly, width=DEFAULT_WIDTH) -> RootCountReport:
    n = p.degree
    if n < 1:
        raise ValueError("recursive analysis needs degree >= 1")
    if p.tc == 0:
        raise ValueError("strip the zero roots before analyze_recursive")
    if n <= MAX_ANALYTIC_DEGREE:
        return analyze_leading_split(p, width)
    if n <= 7:
        # lambda/mu form: lambda = a_n x^n + 1, mu = x * (r / x) with r/x analyzed recursively
        split = make_leading_split(p)
        inner = split.r.strip_zero_roots()[0] if split.r else split.r
        log = [f"recursive leading split: lambda = {split.q}, mu = x * ({inner})"]
        lam = Component.exact("lambda", split.q, "lambda")
        mu = _zero_component("mu", split.r, "mu", width)
        engine = SegmentEngine(split.normalized_input, lam, mu, method="recursive", log=log)
        return engine.run()
    k = choose_k(n)
    split = make_origin_split(p, k)
    log = [f"recursive origin split k = {k}: F = {split.F}, g = {split.g}"]
    f = _zero_component("f", split.f, "f", width)
    g = _zero_component("g", split.g, "g", width)
    engine = SegmentEngine(p, f, g, method="recursive", log=log)
    return _lock_note(engine.run())


def with_zero_roots(report: RootCountReport, m: int) -> RootCountReport:
    """Lift a report on p / x^m back to p."""
    if m == 0:
        return report
    zero = AlgebraicReal.rational(0)
    cells = list(report.intervals)
    cells.append(ReportInterval(zero, zero, "point", (m,), "x = 0"))
    cells.sort(key=lambda iv: (iv.lo if isinstance(iv.lo, float) else iv.lo.approx()))
    return dataclasses.replace(
        report,
        degree=report.degree + m,
        zero_multiplicity=report.zero_multiplicity + m,
        intervals=tuple(cells),
        deduction_log=(f"x = 0 is a root of multiplicity {m}; analysed p / x^{m}",) + report.deduction_log,
    )
