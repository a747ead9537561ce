"""Classical baselines: sign-rule counts, bulk root bounds, interval mapping."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactpoly import Poly, as_rational, sign_variations


@dataclass(frozen=True)
class SignRuleResult:
    positive_candidates: tuple[int, ...]
    negative_candidates: tuple[int, ...]


@dataclass(frozen=True)
class BulkBound:
    radius: Fraction
    rule: str  # "lagrange" or "cauchy"

    def __post_init__(self):
        if self.rule not in ("lagrange", "cauchy"):
            raise ValueError(f"unknown bound rule {self.rule!r}")
        if self.radius <= 0:
            raise ValueError("radius must be positive")


def candidates_from_variations(v: int) -> tuple[int, ...]:
    return tuple(range(v, -1, -2))


def descartes(p: Poly) -> SignRuleResult:
    """Candidate counts of positive and negative roots (zero roots excluded)."""
    if not p:
        raise ValueError("sign rule on the zero polynomial")
    core, _ = p.strip_zero_roots()
    return SignRuleResult(
        candidates_from_variations(sign_variations(core)),
        candidates_from_variations(sign_variations(core.mirror())),
    )


def _monic_tail(p: Poly) -> list[Fraction]:
    if p.degree < 1:
        raise ValueError("bound of a constant polynomial")
    lead = p.lc
    return [abs(c / lead) for c in p.coeffs[:-1]]


def lagrange_bound(p: Poly) -> BulkBound:
    return BulkBound(max(Fraction(1), sum(_monic_tail(p))), "lagrange")


def cauchy_bound(p: Poly) -> BulkBound:
    return BulkBound(1 + max(_monic_tail(p)), "cauchy")


def mobius_shift(p: Poly, a, b) -> Poly:
    """``(1+x)^n p((a x + b)/(x + 1))``; positive roots <-> roots of p in (a, b)."""
    a, b = as_rational(a), as_rational(b)
    if a >= b:
        raise ValueError("mobius_shift needs a < b")
    if not p:
        raise ValueError("mobius_shift of the zero polynomial")
    n = p.degree
    num = Poly([b, a])
    den = Poly([1, 1])
    out = Poly([])
    for i, c in enumerate(p.coeffs):
        if c:
            out = out + num ** i * den ** (n - i) * c
    return out


def interval_sign_bound(p: Poly, lo, hi) -> int:
    """Sign-rule upper bound on roots (with multiplicity) of p in the open (lo, hi).

    Infinite endpoints are allowed as float infinities.
    """
    lo_inf = isinstance(lo, float) and lo == float("-inf")
    hi_inf = isinstance(hi, float) and hi == float("inf")
    if lo_inf and hi_inf:
        core, m = p.strip_zero_roots()
        return sign_variations(core) + sign_variations(core.mirror()) + m
    if hi_inf:
        return sign_variations(p.shift(as_rational(lo)).strip_zero_roots()[0])
    if lo_inf:
        # x -> hi - x maps (-inf, hi) onto (0, inf)
        return sign_variations(p.mirror().shift(-as_rational(hi)).strip_zero_roots()[0])
    return sign_variations(mobius_shift(p, lo, hi).strip_zero_roots()[0])
