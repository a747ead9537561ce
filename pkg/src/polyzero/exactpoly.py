"""Exact univariate polynomial arithmetic over the rationals.

Coefficients are :class:`fractions.Fraction` values stored in ascending
order (index ``i`` holds the coefficient of ``x**i``).  Everything here is
exact; no floating point is used in any decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]
# An extended rational endpoint: a Fraction/int, or float('inf') / float('-inf').
Extended = Union[int, Fraction, float]


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"cannot convert {value!r} to a rational")
        return Fraction(value)
    return Fraction(value)


class Poly:
    """Dense polynomial with rational coefficients (immutable, hashable)."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, c: Number, k: int) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Number], lead: Number = 1) -> "Poly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    # basic queries
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def tc(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(self.coeffs)
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"Poly({render(self)!r})"

    def __str__(self) -> str:
        return render(self)

    # arithmetic
    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = _coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        inv = 1 / other.lc
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv
            quot[i - dq] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def scale(self, c: Number) -> "Poly":
        c = as_rational(c)
        return Poly([a * c for a in self.coeffs])

    def monic(self) -> "Poly":
        if not self:
            return self
        return self.scale(1 / self.lc)

    def __call__(self, x):
        return evaluate(self, x)

    # substitutions
    def compose(self, other: "Poly") -> "Poly":
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * other + Poly([c])
        return out

    def shift(self, a: Number) -> "Poly":
        """Return p(x + a) via repeated synthetic division (Taylor shift)."""
        a = as_rational(a)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return Poly(cs)

    def mirror(self) -> "Poly":
        """Return p(-x)."""
        return Poly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def dilate(self, s: Number) -> "Poly":
        """Return p(s*x)."""
        s = as_rational(s)
        out, f = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * f)
            f *= s
        return Poly(out)

    def reverse(self, n: int | None = None) -> "Poly":
        """Return x**n * p(1/x) for formal degree n (default: degree)."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly(reversed(cs[: n + 1]))

    def trailing_zeros(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def strip_zero_roots(self) -> tuple["Poly", int]:
        m = self.trailing_zeros()
        return Poly(self.coeffs[m:]), m

    def primitive(self) -> "Poly":
        """Positive rational multiple with coprime integer coefficients."""
        if not self:
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return Poly([Fraction(v, g) for v in ints])

    def integer_coeffs(self) -> list[int]:
        return [int(c) for c in self.primitive().coeffs]


def _coerce(value) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly([value])


def render(p: Poly, var: str = "x") -> str:
    """Human readable expression that :func:`polyzero.parser.parse_polynomial` reads back."""
    if not p:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag} {mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# evaluation and calculus


def evaluate(p: Poly, x) -> Fraction:
    """Horner evaluation; exact for rational ``x``."""
    acc = Fraction(0) if not isinstance(x, (float, complex)) else 0.0
    for c in reversed(p.coeffs):
        acc = acc * x + (c if not isinstance(x, (float, complex)) else float(c))
    return acc


def derivative(p: Poly, order: int = 1) -> Poly:
    cs = list(p.coeffs)
    for _ in range(order):
        cs = [i * cs[i] for i in range(1, len(cs))]
    return Poly(cs)


def sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_at_infinity(p: Poly, positive: bool) -> int:
    if not p:
        return 0
    s = sign(p.lc)
    return s if positive or p.degree % 2 == 0 else -s


@lru_cache(maxsize=8192)
def _cleared(p: Poly) -> tuple[int, ...]:
    return tuple(p.integer_coeffs())


def sign_at_rational(p: Poly, x) -> int:
    """Exact sign of ``p(x)`` with integer arithmetic only."""
    x = as_rational(x)
    n, d = x.numerator, x.denominator
    cs = _cleared(p)
    if not cs:
        return 0
    acc, dp = 0, 1
    for c in reversed(cs):
        acc = acc * n + c * dp
        dp *= d
    return sign(acc)


def sign_at_extended(p: Poly, x: Extended) -> int:
    if isinstance(x, float) and math.isinf(x):
        return sign_at_infinity(p, x > 0)
    return sign_at_rational(p, x)


# ---------------------------------------------------------------------------
# gcd and squarefree machinery


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    a, b = p, q
    while b:
        a, b = b, (a % b).primitive()
    return a.monic()


@lru_cache(maxsize=4096)
def squarefree_part(p: Poly) -> Poly:
    if not p:
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree <= 0:
        return Poly([1])
    g = gcd(p, derivative(p))
    return p.exact_div(g).primitive()


def gcd_squarefree(p: Poly) -> tuple[Poly, Poly]:
    """Return ``(gcd(p, p'), p / gcd(p, p'))``."""
    if not p:
        raise ValueError("gcd_squarefree of the zero polynomial")
    if p.degree <= 0:
        return Poly([1]), p
    g = gcd(p, derivative(p))
    return g, p.exact_div(g)


@lru_cache(maxsize=4096)
def squarefree_decomposition(p: Poly) -> tuple[tuple[Poly, int], ...]:
    """Yun's algorithm: ``p = c * prod(f_i ** i)`` with each ``f_i`` squarefree.

    Returns the nonconstant factors with their multiplicity.
    """
    if not p:
        raise ValueError("squarefree decomposition of the zero polynomial")
    if p.degree <= 0:
        return ()
    dp = derivative(p)
    a = gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - derivative(b)
    out = []
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a.primitive(), i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - derivative(b)
        i += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# resultants and discriminants


def _bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination on an integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sgn, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sgn = -sgn
                    break
            else:
                return 0
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return sgn * m[n - 1][n - 1]


def _sylvester(pc: Sequence[int], qc: Sequence[int], m: int, n: int) -> list[list[int]]:
    """Sylvester matrix for formal degrees m, n (ascending coefficient lists)."""
    size = m + n
    rows = []
    prow = [pc[i] if i < len(pc) else 0 for i in range(m, -1, -1)]
    qrow = [qc[i] if i < len(qc) else 0 for i in range(n, -1, -1)]
    for i in range(n):
        rows.append([0] * i + prow + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + qrow + [0] * (size - i - n - 1))
    return rows


def _integerize(cs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in cs], den


def formal_resultant(pc: Sequence[Fraction], qc: Sequence[Fraction], m: int, n: int) -> Fraction:
    """Sylvester determinant with formal degrees (leading entries may vanish)."""
    pi, dp = _integerize([as_rational(c) for c in pc])
    qi, dq = _integerize([as_rational(c) for c in qc])
    det = _bareiss_det(_sylvester(pi, qi, m, n))
    return Fraction(det, dp**n * dq**m)


def resultant(p: Poly, q: Poly) -> Fraction:
    if not p or not q:
        raise ValueError("resultant with the zero polynomial")
    return formal_resultant(p.coeffs, q.coeffs, p.degree, q.degree)


def discriminant(p: Poly) -> Fraction:
    """``(-1)**(n(n-1)/2) * Res(p, p') / lc(p)``."""
    n = p.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    res = resultant(p, derivative(p))
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return s * res / p.lc


@dataclass(frozen=True)
class ParamPoly:
    """``base(x) + alpha * x**d`` with ``alpha`` an indeterminate."""

    base: Poly
    param_monomial_degree: int

    def __post_init__(self):
        d = self.param_monomial_degree
        if d < 0:
            raise ValueError("parameter monomial degree must be nonnegative")
        if self.base.coeff(d) != 0:
            raise ValueError("base polynomial must vanish at the parameter slot")

    @property
    def formal_degree(self) -> int:
        return max(self.base.degree, self.param_monomial_degree)

    def instantiate(self, alpha: Number) -> Poly:
        return self.base + Poly.monomial(alpha, self.param_monomial_degree)


def _interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Poly:
    """Newton divided differences."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = Poly([coef[-1]])
    for i in range(n - 2, -1, -1):
        p = p * Poly([-xs[i], 1]) + Poly([coef[i]])
    return p


def discriminant_in_parameter(pp: ParamPoly) -> Poly:
    """Discriminant of ``pp`` as a polynomial in the indeterminate coefficient.

    The Sylvester determinant is polynomial in alpha (entries are affine in it),
    so it is recovered exactly by interpolation at ``2n`` rational nodes.  The
    normalizing division by the leading coefficient is then carried out as an
    exact polynomial division.
    """
    n = pp.formal_degree
    d = pp.param_monomial_degree
    if n < 2:
        raise ValueError("parametrized polynomial must have degree >= 2")
    if d < n and pp.base.lc == 0:
        raise ValueError("malformed parametrized polynomial")
    nodes = [Fraction(k) for k in range(1, 2 * n + 1)]
    values = []
    for a in nodes:
        p = pp.instantiate(a)
        cs = [p.coeff(i) for i in range(n + 1)]
        dcs = [i * cs[i] for i in range(1, n + 1)]
        values.append(formal_resultant(cs, dcs, n, n - 1))
    res = _interpolate(nodes, values)
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    lead = Poly([0, 1]) if d == n else Poly([pp.base.lc])
    return res.exact_div(lead).scale(s)


# ---------------------------------------------------------------------------
# Sturm sequences


@lru_cache(maxsize=4096)
def sturm_sequence(p: Poly) -> tuple[Poly, ...]:
    """Canonical Sturm chain of the squarefree part, scaled by positive constants."""
    f = squarefree_part(p)
    seq = [f, derivative(f).primitive()]
    while True:
        r = seq[-2] % seq[-1]
        if not r:
            break
        r = -r
        # positive rescaling keeps sign semantics and coefficient size small
        prim = r.primitive()
        if sign(prim.lc) != sign(r.lc):
            prim = -prim
        seq.append(prim)
    return tuple(seq)


def _variations(signs: Iterable[int]) -> int:
    v, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def sturm_variations(p: Poly, x: Extended) -> int:
    return _variations(sign_at_extended(q, x) for q in sturm_sequence(p))


def sturm_count(p: Poly, lo: Extended, hi: Extended) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``."""
    if not p:
        raise ValueError("sturm_count of the zero polynomial")
    if not lo < hi:
        raise ValueError("sturm_count needs lo < hi")
    if p.degree <= 0:
        return 0
    return sturm_variations(p, lo) - sturm_variations(p, hi)


def count_roots_with_multiplicity(p: Poly, lo: Extended, hi: Extended) -> int:
    """Real roots in ``(lo, hi]`` counted with multiplicity."""
    if p.degree <= 0:
        return 0
    return sum(m * sturm_count(f, lo, hi) for f, m in squarefree_decomposition(p))


def sign_variations(p: Poly) -> int:
    return _variations(sign(c) for c in p.coeffs)
