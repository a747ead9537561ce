"""Tangency pairs (alpha, chi) of a one-parameter family of polynomials.

For ``p_alpha(x) = alpha * x**d + base(x)`` the pair (alpha, chi) means that
``chi`` is a root of multiplicity at least two of ``p_alpha``.  Eliminating
alpha from ``p = p' = 0`` gives the chi-equation
``x * base'(x) - d * base(x) = 0`` (just ``base'`` when d = 0), and
``alpha = -base(chi) / chi**d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .exactpoly import ParamPoly, Poly, derivative, discriminant_in_parameter
from .realroots import NEG_INF, POS_INF, AlgebraicReal, real_roots, rational_between


@dataclass(frozen=True)
class TangencyData:
    alpha: AlgebraicReal
    chi: AlgebraicReal
    chi_multiplicity: int


def chi_equation(pp: ParamPoly) -> Poly:
    base, d = pp.base, pp.param_monomial_degree
    if d == 0:
        return derivative(base)
    return Poly.x() * derivative(base) - base * d


def interval_eval(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Outer bounds of ``p`` over ``[lo, hi]`` by interval Horner."""
    rlo = rhi = Fraction(0)
    for c in reversed(p.coeffs):
        prods = (rlo * lo, rlo * hi, rhi * lo, rhi * hi)
        rlo, rhi = min(prods) + c, max(prods) + c
    return rlo, rhi


def _alpha_enclosure(pp: ParamPoly, chi: AlgebraicReal) -> tuple[Fraction, Fraction]:
    """Outer bounds of ``-base(chi)/chi**d``; chi's enclosure must avoid 0."""
    blo, bhi = interval_eval(pp.base, chi.lo, chi.hi)
    d = pp.param_monomial_degree
    plo, phi = interval_eval(Poly.monomial(1, d), chi.lo, chi.hi)
    cands = (-blo / plo, -blo / phi, -bhi / plo, -bhi / phi)
    return min(cands), max(cands)


def _chi_zero_safe(chi: AlgebraicReal) -> None:
    while chi.exact is None and chi.lo <= 0 <= chi.hi:
        chi.refine(chi.width / 2)


def tangency_set(pp: ParamPoly) -> list[TangencyData]:
    """All real tangency pairs with nonzero alpha, alpha descending."""
    delta = discriminant_in_parameter(pp)
    if not delta:
        raise ValueError("discriminant vanishes identically; family is degenerate")
    alphas = [r for r, _ in real_roots(delta)] if delta.degree > 0 else []
    if not alphas:
        return []
    # separating rationals: alpha_j is the only discriminant root in (cuts[j], cuts[j+1])
    cuts = [NEG_INF] + [rational_between(a, b) for a, b in zip(alphas, alphas[1:])] + [POS_INF]
    d = pp.param_monomial_degree
    base = pp.base
    mult3 = Poly.x() ** 2 * derivative(base, 2) - base * (d * (d - 1))
    out: list[TangencyData] = []
    eq = chi_equation(pp)
    if eq.degree <= 0:
        return []
    for chi, _ in real_roots(eq):
        if d > 0 and chi.compare_rational(0) == 0:
            continue
        if chi.is_root_of(base):  # alpha would be 0
            continue
        _chi_zero_safe(chi)
        while True:
            if chi.exact is not None:
                v = -base(chi.exact) / chi.exact ** d
                lo = hi = v
            else:
                lo, hi = _alpha_enclosure(pp, chi)
            j = _cell_of(cuts, lo, hi)
            if j is not None:
                break
            chi.refine(chi.width / 2)
        alpha = alphas[j]
        m = 3 if chi.is_root_of(mult3) else 2
        out.append(TangencyData(alpha, chi, m))
    out.sort(key=cmp_to_key(_order))
    return out


def _order(s: TangencyData, t: TangencyData) -> int:
    return t.alpha.compare(s.alpha) or s.chi.compare(t.chi)


def _cell_of(cuts: list, lo: Fraction, hi: Fraction):
    for j in range(len(cuts) - 1):
        left, right = cuts[j], cuts[j + 1]
        if (left == NEG_INF or left < lo) and (right == POS_INF or hi < right):
            return j
    return None
