"""Root-count reports, their JSON form, and validation against the oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactpoly import Poly
from .realroots import (
    DEFAULT_WIDTH,
    AlgebraicReal,
    Endpoint,
    NumericRoot,
    endpoint_compare,
    real_roots,
)

SCHEMA_VERSION = "1"

CountSet = tuple[int, ...]


def count_set(values: Iterable[int]) -> CountSet:
    return tuple(sorted(set(values)))


@dataclass(frozen=True)
class ReportInterval:
    """A cell of the real line with the possible number of roots inside.

    ``kind`` is ``open`` for the open cell (lo, hi), ``point`` for an exact
    rational location (lo == hi), and ``enclosure`` for a single irrational
    location known to lie in (lo, hi).  Counts include multiplicity.
    """

    lo: Endpoint
    hi: Endpoint
    kind: str
    candidates: CountSet
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("open", "point", "enclosure"):
            raise ValueError(f"bad interval kind {self.kind!r}")
        if not self.candidates or min(self.candidates) < 0:
            raise ValueError("candidate set must be nonempty and nonnegative")

    @classmethod
    def at(cls, x: AlgebraicReal, multiplicity: int, label: str = "") -> "ReportInterval":
        kind = "point" if x.is_rational else "enclosure"
        return cls(x, x, kind, (multiplicity,), label)

    @property
    def is_exact(self) -> bool:
        return len(self.candidates) == 1


@dataclass(frozen=True)
class RootCountReport:
    degree: int
    negative: CountSet
    positive: CountSet
    zero_multiplicity: int
    complex_pairs: CountSet
    intervals: tuple[ReportInterval, ...]
    deduction_log: tuple[str, ...]
    method: str
    markers: tuple[tuple[str, AlgebraicReal], ...] = ()

    def __post_init__(self):
        for name in ("negative", "positive", "complex_pairs"):
            if not getattr(self, name):
                raise ValueError(f"empty candidate set for {name}")
        if not any(
            n + p + self.zero_multiplicity + 2 * c == self.degree
            for n in self.negative
            for p in self.positive
            for c in self.complex_pairs
        ):
            raise ValueError("inconsistent report: no count combination sums to the degree")

    @property
    def exact_negative(self) -> Optional[int]:
        return self.negative[0] if len(self.negative) == 1 else None

    @property
    def exact_positive(self) -> Optional[int]:
        return self.positive[0] if len(self.positive) == 1 else None

    @property
    def is_exact(self) -> bool:
        return len(self.negative) == 1 and len(self.positive) == 1

    def marker(self, name: str) -> AlgebraicReal:
        for n, v in self.markers:
            if n == name:
                return v
        raise KeyError(name)

    def markers_named(self, prefix: str) -> list[AlgebraicReal]:
        return [v for n, v in self.markers if n.startswith(prefix)]

    def interval_containing(self, x) -> Optional[ReportInterval]:
        """The emitted cell holding the exact number ``x`` (points preferred)."""
        x = x if isinstance(x, AlgebraicReal) else AlgebraicReal.rational(x)
        best = None
        for iv in self.intervals:
            if iv.kind != "open":
                if iv.lo.compare(x) == 0:
                    return iv
            elif endpoint_compare(iv.lo, x) < 0 < endpoint_compare(iv.hi, x):
                best = best or iv
        return best


def combine_counts(
    degree: int, zero: int, negative: Iterable[int], positive: Iterable[int]
) -> tuple[CountSet, CountSet, CountSet]:
    """Restrict sign counts to combinations compatible with the degree."""
    neg, pos, cps = set(), set(), set()
    for n in set(negative):
        for p in set(positive):
            rest = degree - zero - n - p
            if rest >= 0 and rest % 2 == 0:
                neg.add(n)
                pos.add(p)
                cps.add(rest // 2)
    if not neg:
        raise ValueError("no admissible count combination")
    return count_set(neg), count_set(pos), count_set(cps)


# ---------------------------------------------------------------------------
# serialization


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _endpoint_json(e: Endpoint, lower: bool, width: Fraction) -> str:
    if isinstance(e, float):
        return "-inf" if e < 0 else "inf"
    e.refine(width)
    return frac_str(e.lo if lower else e.hi)


def _counts_json(s: CountSet):
    return s[0] if len(s) == 1 else list(s)


def interval_json(iv: ReportInterval, width: Fraction) -> dict:
    if iv.kind == "open":
        lo = _endpoint_json(iv.lo, False, width)
        hi = _endpoint_json(iv.hi, True, width)
    else:
        lo = _endpoint_json(iv.lo, True, width)
        hi = _endpoint_json(iv.hi, False, width)
    out = {"lo": lo, "hi": hi, "kind": iv.kind, "candidates": list(iv.candidates)}
    if iv.label:
        out["label"] = iv.label
    return out


def report_json(
    p: Poly,
    report: RootCountReport,
    width: Fraction = DEFAULT_WIDTH,
    baselines: Optional[dict] = None,
    oracle: Optional[dict] = None,
) -> dict:
    """JSON-ready dict.  Open cells print the inner rational points of their
    algebraic endpoints, point and enclosure entries their outer enclosure."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": [frac_str(c) for c in p.coeffs],
        "method": report.method,
        "counts": {
            "positive": _counts_json(report.positive),
            "negative": _counts_json(report.negative),
            "zero": report.zero_multiplicity,
            "complex_pairs": _counts_json(report.complex_pairs),
        },
        "intervals": [interval_json(iv, width) for iv in report.intervals],
        "markers": [
            {"name": n, "lo": _endpoint_json(v, True, width), "hi": _endpoint_json(v, False, width)}
            for n, v in report.markers
        ],
        "baselines": baselines or {},
        "deductions": list(report.deduction_log),
    }
    if oracle is not None:
        doc["oracle"] = oracle
    return doc


# ---------------------------------------------------------------------------
# validation


def _match_tolerance(mult: int, x: float) -> float:
    base = 1e-7 if mult == 1 else 10.0 ** (-10.0 / mult)
    return base * max(1.0, abs(x))


def validate_report(p: Poly, report: RootCountReport, oracle: Sequence[NumericRoot]) -> list[str]:
    """Every way ``report`` disagrees with the oracle roots of ``p``.

    Oracle real roots are first matched to the exact roots of ``p`` (same
    multiplicity profile, values within a multiplicity-scaled tolerance);
    interval membership is then decided exactly.
    """
    problems: list[str] = []
    n = p.degree
    o_real = sorted(r.re for r in oracle if r.im == 0.0)
    o_pairs = sum(1 for r in oracle if r.im > 0.0)
    if len(oracle) != n:
        problems.append(f"oracle returned {len(oracle)} roots for degree {n}")
    exact = real_roots(p)
    total = sum(m for _, m in exact)
    if total != len(o_real):
        problems.append(f"oracle sees {len(o_real)} real roots, exact isolation {total}")
    else:
        i = 0
        for r, m in exact:
            for x in o_real[i : i + m]:
                if abs(x - float(r)) > _match_tolerance(m, x):
                    problems.append(f"oracle root {x!r} not near exact root {float(r)!r}")
            i += m
    zero = p.trailing_zeros()
    if problems:
        # fall back to the raw oracle signs; the mismatch is already reported
        neg = sum(1 for x in o_real if x < 0)
        pos = max(0, len(o_real) - neg - zero)
    else:
        neg = sum(m for r, m in exact if r.compare_rational(0) < 0)
        pos = sum(m for r, m in exact if r.compare_rational(0) > 0)
    if zero != report.zero_multiplicity:
        problems.append(f"zero multiplicity {report.zero_multiplicity} != {zero}")
    if neg not in report.negative:
        problems.append(f"negative count {neg} not in {list(report.negative)}")
    if pos not in report.positive:
        problems.append(f"positive count {pos} not in {list(report.positive)}")
    if o_pairs not in report.complex_pairs:
        problems.append(f"complex pairs {o_pairs} not in {list(report.complex_pairs)}")
    for iv in report.intervals:
        inside = 0
        for r, m in exact:
            if _inside(iv, r):
                inside += m
        if inside not in iv.candidates:
            problems.append(
                f"cell {iv.label or iv.kind} ({_fmt(iv.lo)}, {_fmt(iv.hi)}) holds {inside}, "
                f"candidates {list(iv.candidates)}"
            )
    return problems


def _inside(iv: ReportInterval, r: AlgebraicReal) -> bool:
    if iv.kind == "open":
        return endpoint_compare(iv.lo, r) < 0 < endpoint_compare(iv.hi, r)
    return iv.lo.compare(r) == 0


def _fmt(e: Endpoint) -> str:
    if isinstance(e, float):
        return str(e)
    return f"{e.approx():.6g}"


def summarize(report: RootCountReport) -> str:
    """Short human-readable rendering."""

    def cs(s: CountSet) -> str:
        return str(s[0]) if len(s) == 1 else "{" + ", ".join(map(str, s)) + "}"

    lines = [
        f"method: {report.method}",
        f"negative: {cs(report.negative)}  positive: {cs(report.positive)}  "
        f"zero: {report.zero_multiplicity}  complex pairs: {cs(report.complex_pairs)}",
    ]
    for iv in report.intervals:
        where = (
            f"= {_fmt(iv.lo)}" if iv.kind != "open" else f"in ({_fmt(iv.lo)}, {_fmt(iv.hi)})"
        )
        lines.append(f"  {cs(iv.candidates):>8} root(s) {where}" + (f"  [{iv.label}]" if iv.label else ""))
    if report.markers:
        lines.append("markers: " + ", ".join(f"{n}={_fmt(v)}" for n, v in report.markers))
    lines.extend(f"- {d}" for d in report.deduction_log)
    return "\n".join(lines)
