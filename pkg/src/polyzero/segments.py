"""Cell analysis shared by every split.

A split writes ``p = A - B``.  The real line is cut at the origin, at the
roots (or root zones) of A and B, and at any extra distinguished points.  On
each open segment:

* if A and B have known, opposite signs there, p cannot vanish;
* otherwise the number of roots has the parity fixed by the one-sided signs
  of p at the ends, and is capped by Rolle (one more than the roots of p')
  and by the sign rule applied through the interval map.

Boundary points where p vanishes become point cells with exact multiplicity.
Finally all cells are reconciled against the degree (and, where enabled, the
sign of the discriminant) so that no cell keeps a count that cannot be part
of a globally consistent root census.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

from .bounds import interval_sign_bound
from .exactpoly import Poly, derivative, discriminant, sign, sign_at_infinity, sign_at_rational
from .realroots import (
    NEG_INF,
    POS_INF,
    AlgebraicReal,
    Endpoint,
    endpoint_compare,
    rational_between,
    real_roots,
)
from .report import ReportInterval, RootCountReport, count_set


@dataclass
class Component:
    """One side of a split, with everything known about where it vanishes.

    ``points`` are exact roots; ``zones`` are open intervals that may contain
    roots whose exact location is not known (from a recursive analysis).
    Outside points and zones the component has no roots.  ``marks`` are
    further named abscissae worth cutting at (from a sub-analysis).
    """

    name: str
    poly: Poly
    points: list[tuple[str, AlgebraicReal]] = field(default_factory=list)
    zones: list[tuple[Endpoint, Endpoint]] = field(default_factory=list)
    marks: list[tuple[str, AlgebraicReal]] = field(default_factory=list)

    @classmethod
    def exact(cls, name: str, poly: Poly, prefix: str) -> "Component":
        comp = cls(name, poly)
        if poly.degree > 0:
            roots = real_roots(poly)
            for i, (r, _) in enumerate(roots, 1):
                comp.points.append((f"{prefix}_{i}", r))
        return comp


class _Break:
    __slots__ = ("x", "names")

    def __init__(self, x: AlgebraicReal, name: str):
        self.x = x
        self.names = [name] if name else []

    @property
    def label(self) -> str:
        return "=".join(self.names) if self.names else f"{self.x.approx():.4g}"


def _merge_breaks(items: list[tuple[str, AlgebraicReal]]) -> list[_Break]:
    items = sorted(items, key=cmp_to_key(lambda s, t: s[1].compare(t[1])))
    out: list[_Break] = []
    for name, x in items:
        if out and out[-1].x.compare(x) == 0:
            if name and name not in out[-1].names:
                out[-1].names.append(name)
            if x.exact is not None and out[-1].x.exact is None:
                out[-1].x = x
            continue
        out.append(_Break(x, name))
    return out


def _outer(e: Endpoint, lower: bool) -> Endpoint:
    if isinstance(e, float):
        return e
    return e.lo if lower else e.hi


def _one_sided(p: Poly, x: Endpoint, right: bool) -> int:
    """Sign of p just right (or left) of x."""
    if isinstance(x, float):
        return sign_at_infinity(p, x > 0)
    lo, hi = x.side_signs(p)
    return hi if right else lo


@dataclass
class SegmentEngine:
    p: Poly
    a: Component
    b: Component
    extras: list[tuple[str, AlgebraicReal]] = field(default_factory=list)
    use_discriminant: bool = False
    method: str = "split"
    log: list[str] = field(default_factory=list)

    def run(self) -> RootCountReport:
        p = self.p
        n = p.degree
        items: list[tuple[str, AlgebraicReal]] = [("0", AlgebraicReal.rational(0))]
        items += self.a.points + self.b.points + self.a.marks + self.b.marks + self.extras
        for comp in (self.a, self.b):
            for lo, hi in comp.zones:
                for e in (lo, hi):
                    if not isinstance(e, float):
                        items.append(("", e))
        breaks = _merge_breaks(items)
        dp_roots = real_roots(derivative(p)) if n > 1 else []

        cells: list[ReportInterval] = []
        kinds: list[str] = []  # "neg" / "pos" / "zero" per cell
        ends = [NEG_INF] + [br.x for br in breaks] + [POS_INF]
        names = ["-inf"] + [br.label for br in breaks] + ["inf"]
        for i in range(len(ends) - 1):
            lo, hi = ends[i], ends[i + 1]
            cand, why = self._segment(lo, hi, dp_roots)
            label = f"{names[i]} < x < {names[i + 1]}"
            cells.append(ReportInterval(lo, hi, "open", cand, label))
            kinds.append("neg" if endpoint_compare(hi, AlgebraicReal.rational(0)) <= 0 else "pos")
            self.log.append(f"({label}): {why} -> {_fmt_set(cand)}")
            if i + 1 < len(ends) - 1:
                br = breaks[i]
                m = br.x.vanishing_order(p)
                if m:
                    cells.append(ReportInterval.at(br.x, m, f"x = {br.label}"))
                    z = br.x.compare_rational(0)
                    kinds.append("zero" if z == 0 else "neg" if z < 0 else "pos")
                    self.log.append(f"p vanishes at {br.label} with multiplicity {m}")
        dsign = 0
        if self.use_discriminant and n >= 2:
            dsign = sign(discriminant(p))
            self.log.append(
                f"discriminant sign {dsign:+d}: number of complex pairs is "
                + ("even" if dsign > 0 else "odd" if dsign < 0 else "unconstrained")
            )
        cells, neg, pos, zero, cps = reconcile(n, cells, kinds, dsign)
        markers = tuple((name, br.x) for br in breaks for name in br.names if name != "0")
        return RootCountReport(n, neg, pos, zero, cps, tuple(cells), tuple(self.log), self.method, markers)

    def _known_sign(self, comp: Component, lo: Endpoint, hi: Endpoint, t: Fraction) -> Optional[int]:
        for zlo, zhi in comp.zones:
            if endpoint_compare(zlo, lo) <= 0 and endpoint_compare(hi, zhi) <= 0:
                return None
        return sign_at_rational(comp.poly, t)

    def _segment(self, lo: Endpoint, hi: Endpoint, dp_roots) -> tuple[tuple[int, ...], str]:
        p = self.p
        t = rational_between(lo, hi)
        sa = self._known_sign(self.a, lo, hi, t)
        sb = self._known_sign(self.b, lo, hi, t)
        if sa is not None and sb is not None and sa != sb:
            return (0,), f"{self.a.name} and {self.b.name} have opposite signs ({sa:+d}/{sb:+d})"
        parity = int(_one_sided(p, lo, True) != _one_sided(p, hi, False))
        rolle = 1 + sum(m for r, m in dp_roots if endpoint_compare(lo, r) < 0 < endpoint_compare(hi, r))
        cap = min(rolle, p.degree)
        why = f"parity {'odd' if parity else 'even'}, Rolle cap {rolle}"
        if cap >= 2:
            desc = self._descartes_cap(lo, hi)
            if desc < cap:
                cap = desc
                why += f", sign-rule cap {desc}"
        if cap < parity:
            raise AssertionError(f"cap {cap} below parity on segment; unsound state")
        return tuple(range(parity, cap + 1, 2)), why

    def _descartes_cap(self, lo: Endpoint, hi: Endpoint) -> int:
        p = self.p
        for e in (lo, hi):
            if not isinstance(e, float) and e.exact is None:
                e.refine(max(e.width / 2**12, Fraction(1, 2**40)))
        olo, ohi = _outer(lo, True), _outer(hi, False)
        bound = interval_sign_bound(p, olo, ohi)
        # roots on an irrational end lie inside the outer window; rational ends
        # are window ends themselves and already excluded
        for e in (lo, hi):
            if not isinstance(e, float) and e.exact is None:
                bound -= e.vanishing_order(p)
        return max(bound, 0)


def _fmt_set(s: Sequence[int]) -> str:
    return str(s[0]) if len(s) == 1 else "{" + ",".join(map(str, s)) + "}"


def reconcile(
    n: int, cells: list[ReportInterval], kinds: list[str], dsign: int = 0
) -> tuple[list[ReportInterval], tuple, tuple, int, tuple]:
    """Prune per-cell counts that fit no global census; return the census."""
    zero = sum(c.candidates[0] for c, k in zip(cells, kinds) if k == "zero")

    def ok(neg: int, pos: int) -> bool:
        real = neg + pos + zero
        if real > n or (n - real) % 2:
            return False
        if dsign:
            pairs = (n - real) // 2
            return (1 if pairs % 2 == 0 else -1) == dsign
        return True

    def step(states: set, kind: str, v: int) -> set:
        if kind == "neg":
            return {(a + v, b) for a, b in states}
        if kind == "pos":
            return {(a, b + v) for a, b in states}
        return set(states)

    m = len(cells)
    fwd = [{(0, 0)}]
    for c, k in zip(cells, kinds):
        fwd.append({s for v in c.candidates for s in step(fwd[-1], k, v) if s[0] + s[1] <= n})
    bwd = [set() for _ in range(m + 1)]
    bwd[m] = {(0, 0)}
    for i in range(m - 1, -1, -1):
        bwd[i] = {s for v in cells[i].candidates for s in step(bwd[i + 1], kinds[i], v) if s[0] + s[1] <= n}
    finals = {s for s in fwd[m] if ok(*s)}
    if not finals:
        raise AssertionError("no consistent root census; analysis is unsound")
    out = []
    for i, (c, k) in enumerate(zip(cells, kinds)):
        keep = []
        for v in c.candidates:
            left = step(fwd[i], k, v)
            if any(ok(a1 + a2, b1 + b2) for a1, b1 in left for a2, b2 in bwd[i + 1]):
                keep.append(v)
        out.append(ReportInterval(c.lo, c.hi, c.kind, tuple(keep), c.label))
    neg = count_set(s[0] for s in finals)
    pos = count_set(s[1] for s in finals)
    cps = count_set((n - zero - a - b) // 2 for a, b in finals)
    return out, neg, pos, zero, cps
