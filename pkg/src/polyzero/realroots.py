"""Certified real-root isolation, algebraic reals, and a numeric oracle.

The exact side (``AlgebraicReal``, ``isolate_real_roots``, ``refine``) only
ever decides things by exact sign evaluation and Sturm counts.  The numeric
side (``oracle_all_roots``) is used for validation and never feeds back into
a decision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

import mpmath

from .exactpoly import (
    Poly,
    as_rational,
    derivative,
    gcd,
    sign,
    sign_at_rational,
    squarefree_decomposition,
    squarefree_part,
    sturm_count,
)

DEFAULT_WIDTH = Fraction(1, 2**10)


class NotCertifiedError(ValueError):
    """An interval does not satisfy the isolation sign conditions."""


class OracleError(RuntimeError):
    def __init__(self, message: str, best: list):
        super().__init__(message)
        self.best = best


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Simplest rational strictly inside (lo, hi) (Stern-Brocot descent)."""
    if lo >= hi:
        raise ValueError("empty interval")
    fl = math.floor(lo) + 1
    if fl < hi:
        # an integer fits; take the one closest to zero
        if lo < 0 < hi:
            return Fraction(0)
        return Fraction(fl) if lo >= 0 else Fraction(math.ceil(hi) - 1)
    # same integer part: recurse on the fractional parts
    n = math.floor(lo)
    a, b = lo - n, hi - n
    # 0 <= a < b <= 1; simplest in (a, b) via reciprocals
    if a == 0:
        k = math.floor(1 / b) + 1
        return n + Fraction(1, k)
    inner = _simplest_between(1 / b, 1 / a)
    return n + 1 / inner


def _cauchy_radius_pow2(p: Poly) -> Fraction:
    lc = abs(p.lc)
    m = max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))
    bound = 1 + m
    r = Fraction(1)
    while r < bound:
        r *= 2
    return r


class AlgebraicReal:
    """A real algebraic number: squarefree defining polynomial plus enclosure.

    Either ``exact`` is a Fraction (and ``lo == hi == exact``), or the defining
    polynomial takes nonzero values of opposite sign at ``lo < hi`` and has
    exactly one root in between.  Refinement only narrows the enclosure; the
    value itself never changes, so sharing instances is safe.
    """

    __slots__ = ("poly", "lo", "hi", "exact", "_slo")

    def __init__(self, poly: Poly, lo, hi, *, exact: Optional[Fraction] = None):
        self.poly = poly
        if exact is not None:
            exact = as_rational(exact)
            self.lo = self.hi = self.exact = exact
            self._slo = 0
            return
        self.lo, self.hi, self.exact = as_rational(lo), as_rational(hi), None
        self._slo = sign_at_rational(poly, self.lo)

    @classmethod
    def rational(cls, r) -> "AlgebraicReal":
        r = as_rational(r)
        return cls(Poly([-r, 1]), r, r, exact=r)

    @classmethod
    def from_interval(cls, poly: Poly, lo, hi) -> "AlgebraicReal":
        """The unique root of ``poly`` strictly inside ``(lo, hi)``; checked."""
        f = squarefree_part(poly)
        lo, hi = as_rational(lo), as_rational(hi)
        if lo == hi:
            if sign_at_rational(f, lo) != 0:
                raise NotCertifiedError("point is not a root")
            return cls.rational(lo)
        slo, shi = sign_at_rational(f, lo), sign_at_rational(f, hi)
        if slo * shi >= 0 or sturm_count(f, lo, hi) != 1:
            raise NotCertifiedError(f"({lo}, {hi}) does not isolate a root of {poly}")
        return cls(f, lo, hi)

    # -- basic properties ------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.exact is not None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def _bisect(self) -> None:
        mid = (self.lo + self.hi) / 2
        s = sign_at_rational(self.poly, mid)
        if s == 0:
            self.lo = self.hi = self.exact = mid
        elif s == self._slo:
            self.lo = mid
        else:
            self.hi = mid

    def refine(self, width) -> "AlgebraicReal":
        width = as_rational(width)
        while self.exact is None and self.hi - self.lo > width:
            self._bisect()
        return self

    def refine_strictly_inside(self) -> None:
        """Shrink so the enclosure avoids the integer grid's trivial overlaps."""
        if self.exact is None:
            self._bisect()

    def __float__(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        scale = max(1.0, abs(float(self.lo)), abs(float(self.hi)))
        self.refine(Fraction(scale) / 2**55)
        return float((self.lo + self.hi) / 2)

    def approx(self, rel: float = 1e-9) -> float:
        """Cheap float approximation for display (relative width ``rel``)."""
        if self.exact is not None:
            return float(self.exact)
        scale = max(1.0, abs(float(self.lo)), abs(float(self.hi)))
        self.refine(Fraction(scale * rel))
        return float((self.lo + self.hi) / 2)

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"AlgebraicReal({self.exact})"
        return f"AlgebraicReal(root of {self.poly} in ({self.lo}, {self.hi}) ~ {self.approx():.6g})"

    def enclosure(self, width=DEFAULT_WIDTH) -> tuple[Fraction, Fraction]:
        self.refine(width)
        return self.lo, self.hi

    def __neg__(self) -> "AlgebraicReal":
        if self.exact is not None:
            return AlgebraicReal.rational(-self.exact)
        return AlgebraicReal(self.poly.mirror(), -self.hi, -self.lo)

    # -- comparison --------------------------------------------------------
    def compare_rational(self, r) -> int:
        """Sign of ``self - r``."""
        r = as_rational(r)
        if self.exact is not None:
            return sign(self.exact - r)
        if r <= self.lo:
            return 1
        if r >= self.hi:
            return -1
        s = sign_at_rational(self.poly, r)
        if s == 0:
            self.lo = self.hi = self.exact = r
            return 0
        # root lies in (r, hi) if the sign at r matches the sign at lo
        return 1 if s == self._slo else -1

    def compare(self, other) -> int:
        """Exact sign of ``self - other`` (other: AlgebraicReal, rational or +-inf)."""
        if isinstance(other, float) and math.isinf(other):
            return -1 if other > 0 else 1
        if not isinstance(other, AlgebraicReal):
            return self.compare_rational(other)
        if other.exact is not None:
            return self.compare_rational(other.exact)
        if self.exact is not None:
            return -other.compare_rational(self.exact)
        if self.hi <= other.lo:
            return -1
        if other.hi <= self.lo:
            return 1
        g = gcd(self.poly, other.poly)
        if g.degree > 0:
            lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
            if lo < hi and sturm_count(g, lo, hi) - (1 if sign_at_rational(g, hi) == 0 else 0) > 0:
                # g's roots are shared roots; each enclosure holds only one
                if _root_strictly_inside(g, lo, hi):
                    return 0
        while True:
            self._bisect()
            other._bisect()
            if self.exact is not None or other.exact is not None:
                return self.compare(other)
            if self.hi <= other.lo:
                return -1
            if other.hi <= self.lo:
                return 1

    def __eq__(self, other) -> bool:
        if isinstance(other, (AlgebraicReal, int, Fraction)):
            return self.compare(other) == 0
        return NotImplemented

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    __hash__ = None  # equality is semantic, not structural

    # -- polynomial signs at this number ----------------------------------
    def is_root_of(self, q: Poly) -> bool:
        if not q:
            return True
        if self.exact is not None:
            return sign_at_rational(q, self.exact) == 0
        g = gcd(self.poly, q)
        if g.degree <= 0:
            return False
        return _root_strictly_inside(g, self.lo, self.hi)

    def sign_of(self, q: Poly) -> int:
        """Exact sign of ``q`` at this number."""
        if self.exact is not None:
            return sign_at_rational(q, self.exact)
        if q.degree <= 0:
            return sign(q.tc)
        if self.is_root_of(q):
            return 0
        f = squarefree_part(q)
        while True:
            if sign_at_rational(f, self.lo) != 0 and sturm_count(f, self.lo, self.hi) == 0:
                return sign_at_rational(q, self.hi)
            self._bisect()
            if self.exact is not None:
                return sign_at_rational(q, self.exact)

    def vanishing_order(self, q: Poly) -> int:
        """Multiplicity of this number as a root of ``q`` (0 if not a root)."""
        m = 0
        while q and self.is_root_of(q):
            m += 1
            q = derivative(q)
        return m

    def side_signs(self, q: Poly) -> tuple[int, int]:
        """Signs of ``q`` just left and just right of this number."""
        m = self.vanishing_order(q)
        s = self.sign_of(derivative(q, m)) if m else self.sign_of(q)
        return ((-1) ** m * s, s)

    def locate_float(self, x: float, tol: float = 1e-11) -> int:
        """Sign of ``x - self`` decided from the enclosure; 0 when too close to call."""
        if self.exact is not None:
            d = x - float(self.exact)
            return 0 if abs(d) <= tol * max(1.0, abs(x)) else (1 if d > 0 else -1)
        while True:
            lo, hi = float(self.lo), float(self.hi)
            if x < lo:
                return -1
            if x > hi:
                return 1
            if hi - lo <= tol * max(1.0, abs(x)):
                return 0
            self._bisect()
            if self.exact is not None:
                return self.locate_float(x, tol)


def _root_strictly_inside(g: Poly, lo: Fraction, hi: Fraction) -> bool:
    n = sturm_count(g, lo, hi)
    if sign_at_rational(g, hi) == 0:
        n -= 1
    return n > 0


Endpoint = Union[AlgebraicReal, float]  # float only for +-inf

NEG_INF = float("-inf")
POS_INF = float("inf")


def endpoint_compare(a: Endpoint, b: Endpoint) -> int:
    if isinstance(a, float):
        if isinstance(b, float):
            return (a > b) - (a < b)
        return -b.compare(a)
    return a.compare(b)


def endpoint_float(e: Endpoint) -> float:
    return e if isinstance(e, float) else float(e)


def rational_between(a: Endpoint, b: Endpoint) -> Fraction:
    """A simple rational strictly between two distinct endpoints ``a < b``."""
    if isinstance(a, float) and isinstance(b, float):
        return Fraction(0)
    if isinstance(a, float):
        b.refine(1)
        return Fraction(math.floor(b.lo) - 1)
    if isinstance(b, float):
        a.refine(1)
        return Fraction(math.floor(a.hi) + 1)
    if a.exact is not None and b.exact is not None:
        return _simplest_between(a.exact, b.exact)
    while a.hi >= b.lo:
        if a.exact is None:
            a._bisect()
        if b.exact is None:
            b._bisect()
        if a.exact is not None and b.exact is not None:
            return _simplest_between(a.exact, b.exact)
    return _simplest_between(a.hi, b.lo) if a.hi < b.lo else (a.hi + b.lo) / 2


# ---------------------------------------------------------------------------
# isolation


@dataclass(frozen=True)
class IsolationInterval:
    lo: Fraction
    hi: Fraction
    kind: str  # "open" or "point"
    multiplicity: int
    poly: Poly  # squarefree factor the interval isolates a root of

    def __post_init__(self):
        if self.kind not in ("open", "point"):
            raise ValueError(f"bad interval kind {self.kind!r}")
        if (self.kind == "point") != (self.lo == self.hi) or self.lo > self.hi:
            raise ValueError("inconsistent isolation interval")

    def to_algebraic(self) -> AlgebraicReal:
        if self.kind == "point":
            return AlgebraicReal.rational(self.lo)
        return AlgebraicReal(self.poly, self.lo, self.hi)

    def contains(self, x: float) -> bool:
        if self.kind == "point":
            return abs(x - float(self.lo)) <= 1e-9 * max(1.0, abs(x))
        return float(self.lo) < x < float(self.hi)


@dataclass(frozen=True)
class RootList:
    intervals: tuple[IsolationInterval, ...]
    degree_accounted: int

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __getitem__(self, i) -> IsolationInterval:
        return self.intervals[i]

    @property
    def multiplicity_total(self) -> int:
        return sum(iv.multiplicity for iv in self.intervals)

    @property
    def complex_pairs(self) -> int:
        return (self.degree_accounted - self.multiplicity_total) // 2

    def algebraic(self) -> list[AlgebraicReal]:
        return [iv.to_algebraic() for iv in self.intervals]


def _isolate_squarefree(f: Poly) -> list[AlgebraicReal]:
    if f.degree <= 0:
        return []
    bound = _cauchy_radius_pow2(f)
    out: list[AlgebraicReal] = []
    stack = [(-bound, bound, sturm_count(f, -bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(_finish_isolation(f, lo, hi))
            continue
        mid = (lo + hi) / 2
        left = sturm_count(f, lo, mid)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    return out


def _finish_isolation(f: Poly, lo: Fraction, hi: Fraction) -> AlgebraicReal:
    """(lo, hi] holds exactly one root; produce a certified AlgebraicReal."""
    if sign_at_rational(f, hi) == 0:
        return AlgebraicReal.rational(hi)
    while sign_at_rational(f, lo) == 0:
        mid = (lo + hi) / 2
        sm = sign_at_rational(f, mid)
        if sm == 0:
            return AlgebraicReal.rational(mid)
        if sm != sign_at_rational(f, hi):
            lo = mid
        else:
            hi = mid
    alg = AlgebraicReal(f, lo, hi)
    _screen_rational(alg)
    return alg


def _screen_rational(alg: AlgebraicReal) -> None:
    """Snap to an exact rational root when one exists.

    A rational root ``u/v`` of an integer polynomial has ``v | lc``, so
    ``lc * root`` is an integer; once the enclosure is narrower than ``1/lc``
    at most one candidate remains.
    """
    lead = abs(alg.poly.integer_coeffs()[-1])
    alg.refine(Fraction(1, 2 * lead))
    if alg.exact is not None:
        return
    for m in range(math.floor(alg.lo * lead), math.ceil(alg.hi * lead) + 1):
        cand = Fraction(m, lead)
        if alg.lo < cand < alg.hi and sign_at_rational(alg.poly, cand) == 0:
            alg.lo = alg.hi = alg.exact = cand
            return


def real_roots(p: Poly) -> list[tuple[AlgebraicReal, int]]:
    """Distinct real roots of ``p`` with multiplicities, sorted ascending."""
    if not p:
        raise ValueError("real roots of the zero polynomial")
    found: list[tuple[AlgebraicReal, int]] = []
    for f, m in squarefree_decomposition(p):
        for r in _isolate_squarefree(f):
            found.append((r, m))
    _sort_disjoint(found)
    return found


def _sort_disjoint(items: list[tuple[AlgebraicReal, int]]) -> None:
    import functools

    items.sort(key=functools.cmp_to_key(lambda a, b: a[0].compare(b[0])))
    # separate enclosures of neighbours
    for (a, _), (b, _) in zip(items, items[1:]):
        while a.exact is None and b.exact is None and a.hi > b.lo:
            a._bisect()
            b._bisect()
        while a.exact is None and b.exact is not None and a.hi > b.exact:
            a._bisect()
        while b.exact is None and a.exact is not None and b.lo < a.exact:
            b._bisect()


def isolate_real_roots(p: Poly, width_budget=DEFAULT_WIDTH) -> RootList:
    width_budget = as_rational(width_budget)
    if width_budget <= 0:
        raise ValueError("width budget must be positive")
    roots = real_roots(p)
    intervals = []
    for r, m in roots:
        r.refine(width_budget)
        if r.exact is not None:
            intervals.append(IsolationInterval(r.lo, r.hi, "point", m, Poly([-r.exact, 1])))
        else:
            intervals.append(IsolationInterval(r.lo, r.hi, "open", m, r.poly))
    return RootList(tuple(intervals), p.degree)


def refine(p: Poly, iv: IsolationInterval, width_budget) -> IsolationInterval:
    """Shrink a certified isolating interval of ``p`` to the width budget."""
    f = squarefree_part(p)
    if iv.kind == "point":
        if sign_at_rational(p, iv.lo) != 0:
            raise NotCertifiedError(f"{iv.lo} is not a root")
        return iv
    try:
        alg = AlgebraicReal.from_interval(f, iv.lo, iv.hi)
    except NotCertifiedError:
        raise
    alg.refine(as_rational(width_budget))
    kind = "point" if alg.exact is not None else "open"
    return IsolationInterval(alg.lo, alg.hi, kind, iv.multiplicity, alg.poly)


def sign_at(p: Poly, x) -> int:
    return sign_at_rational(p, x)


# ---------------------------------------------------------------------------
# numeric oracle


@dataclass(frozen=True)
class NumericRoot:
    re: float
    im: float
    residual: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


_GOLDEN_ANGLE = math.pi * (3 - math.sqrt(5))


def _aberth(coeffs: list, z: list, tol, max_iter: int, mp: bool):
    """Simultaneous Aberth-Ehrlich iteration; coeffs descending and monic."""
    n = len(z)
    dcoeffs = [c * (n - i) for i, c in enumerate(coeffs[:-1])]
    absf = abs if not mp else mpmath.fabs
    # residuals at roundoff level also stop the iteration (clustered multiple roots
    # never settle their corrections below tol)
    eps = 4 * n * (2.0 ** -52 if not mp else mpmath.mpf(10) ** (-mpmath.mp.dps))
    acoeffs = [absf(c) for c in coeffs]
    for it in range(max_iter):
        worst = 0
        at_roundoff = True
        for k in range(n):
            zk = z[k]
            pv = coeffs[0]
            for c in coeffs[1:]:
                pv = pv * zk + c
            az, scale = absf(zk), 0
            for c in acoeffs:
                scale = scale * az + c
            if absf(pv) > eps * scale:
                at_roundoff = False
            dv = dcoeffs[0]
            for c in dcoeffs[1:]:
                dv = dv * zk + c
            if pv == 0:
                continue
            if dv == 0:
                dv = tol
            w = pv / dv
            s = 0
            for j in range(n):
                if j != k:
                    diff = zk - z[j]
                    s += 1 / diff if diff != 0 else 0
            corr = w / (1 - w * s)
            z[k] = zk - corr
            rel = absf(corr) / max(1, absf(z[k]))
            if rel > worst:
                worst = rel
        if worst <= tol:
            return z, "tol", it + 1
        if at_roundoff:
            return z, "roundoff", it + 1
    return z, None, max_iter


def _relative_residual(coeffs: list, zk) -> float:
    pv, scale = 0, 0
    az = abs(zk)
    for c in coeffs:
        pv = pv * zk + c
        scale = scale * az + abs(c)
    return float(abs(pv) / scale) if scale else 0.0


def oracle_all_roots(p: Poly, tol: float = 1e-10, max_iter: int = 200) -> list[NumericRoot]:
    """All complex roots by Aberth iteration from a golden-angle circle.

    Roots whose imaginary part is too small to classify in double precision
    are polished at 60 significant digits before conjugate pairing.  Roots at
    the origin are split off first and reported as exact zeros.
    """
    if not p:
        raise ValueError("oracle on the zero polynomial")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    m = next(i for i, c in enumerate(p.coeffs) if c)
    zeros = [NumericRoot(0.0, 0.0, 0.0)] * m
    if m:
        p = Poly(p.coeffs[m:])
    n = p.degree
    if n == 0:
        return zeros
    desc = [c / p.lc for c in reversed(p.coeffs)]
    fdesc = [float(c) for c in desc]
    radius = 1 + max(abs(c) for c in fdesc[1:])
    z0 = [radius * cmath.exp(1j * (0.4 + k * _GOLDEN_ANGLE)) for k in range(n)]
    z, ok, _ = _aberth(fdesc, list(z0), tol, max_iter, mp=False)
    if not ok:
        # stalled in double precision: continue at higher precision before failing
        with mpmath.workdps(40):
            zz, ok, _ = _aberth([mpmath.mpf(c.numerator) / c.denominator for c in desc],
                                [mpmath.mpc(v) for v in z], mpmath.mpf(tol) / 10, max_iter, mp=True)
            if ok:
                z = [complex(v) for v in zz]
    if not ok:
        best = [NumericRoot(v.real, v.imag, _relative_residual(fdesc, v)) for v in z]
        raise OracleError("Aberth iteration did not converge", best)
    z = _polish_if_ambiguous(desc, z, force=ok == "roundoff")
    return zeros + _pair_conjugates(fdesc, z)


_AMBIGUOUS_IM = 1e-4
_REAL_IM = 1e-13


def _polish_if_ambiguous(desc: list[Fraction], z: list[complex], force: bool = False) -> list[complex]:
    ambiguous = force or any(0 < abs(v.imag) < _AMBIGUOUS_IM * max(1.0, abs(v)) for v in z)
    if not ambiguous:
        return [complex(v.real, 0.0) if v.imag == 0 else v for v in z]
    # an m-fold cluster only resolves to about 10**(-dps/m); size dps for m = n
    with mpmath.workdps(max(60, 16 * len(z) + 20)):
        mc = [mpmath.mpf(c.numerator) / c.denominator for c in desc]
        zz = [mpmath.mpc(v.real, v.imag) for v in z]
        zz, _, _ = _aberth(mc, zz, mpmath.mpf(10) ** -(mpmath.mp.dps - 10), 400, mp=True)
        out = []
        for v in zz:
            re, im = float(v.real), float(v.imag)
            if abs(v.imag) <= _REAL_IM * max(1, abs(v)):
                im = 0.0
            out.append(complex(re, im))
    return out


def _pair_conjugates(fdesc: list[float], z: list[complex]) -> list[NumericRoot]:
    reals = [v.real for v in z if v.imag == 0.0]
    others = [v for v in z if v.imag != 0.0]
    uppers = sorted((v for v in others if v.imag > 0), key=lambda v: (v.real, v.imag))
    lowers = [v for v in others if v.imag < 0]
    out = [NumericRoot(r, 0.0, _relative_residual(fdesc, complex(r))) for r in sorted(reals)]
    for u in uppers:
        if lowers:
            j = min(range(len(lowers)), key=lambda i: abs(lowers[i] - u.conjugate()))
            w = lowers.pop(j)
            u = complex((u.real + w.real) / 2, (u.imag - w.imag) / 2)
        out.append(NumericRoot(u.real, u.imag, _relative_residual(fdesc, u)))
        out.append(NumericRoot(u.real, -u.imag, _relative_residual(fdesc, u.conjugate())))
    for w in lowers:  # unmatched lower roots: mirror of a real-classified partner
        out.append(NumericRoot(w.real, 0.0, _relative_residual(fdesc, complex(w.real))))
    return out


def oracle_real_roots(p: Poly, tol: float = 1e-10) -> list[float]:
    """Real roots from the oracle, repeated by multiplicity, ascending."""
    return sorted(r.re for r in oracle_all_roots(p, tol) if r.im == 0.0)
