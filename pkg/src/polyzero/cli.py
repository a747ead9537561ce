"""Command-line front end: ``polyzero analyze`` and ``polyzero corpus``."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, TextIO

from . import splits
from .bounds import cauchy_bound, descartes, lagrange_bound
from .exactpoly import Poly, evaluate, render
from .parser import ParseError, parse_polynomial
from .realroots import DEFAULT_WIDTH, AlgebraicReal, OracleError, oracle_all_roots, real_roots
from .report import ReportInterval, RootCountReport, combine_counts, frac_str, report_json, summarize, validate_report

METHODS = ("auto", "leading", "origin", "constant", "recursive", "baselines")
EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class AnalysisRequest:
    polynomial: Poly
    method: str = "auto"
    k: Optional[int] = None
    width_budget: Fraction = DEFAULT_WIDTH
    output: str = "text"
    plot_path: Optional[str] = None
    oracle_check: bool = False

    def __post_init__(self):
        if self.method == "baselines-only":
            self.method = "baselines"
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")
        if self.k is not None and self.method != "origin":
            raise UsageError("--k is only valid with --method origin")
        if self.output not in ("text", "json"):
            raise UsageError(f"unknown output {self.output!r}")
        if self.width_budget <= 0:
            raise UsageError("width budget must be positive")


@dataclass(frozen=True)
class CorpusSpec:
    count: int
    degree_range: tuple[int, int]
    coefficient_height: int
    seed: int

    def __post_init__(self):
        lo, hi = self.degree_range
        if self.count < 0 or not 1 <= lo <= hi or self.coefficient_height < 1:
            raise UsageError("corpus needs count >= 0, 1 <= LO <= HI and height >= 1")


def default_width() -> Fraction:
    env = os.environ.get("POLYZERO_WIDTH")
    if not env:
        return DEFAULT_WIDTH
    try:
        w = Fraction(env)
    except ValueError:
        raise UsageError(f"POLYZERO_WIDTH={env!r} is not a rational number") from None
    if w <= 0:
        raise UsageError("POLYZERO_WIDTH must be positive")
    return w


# ---------------------------------------------------------------------------
# analysis dispatch


def baselines(p: Poly) -> dict:
    core, _ = p.strip_zero_roots()
    d = descartes(p)
    out = {"descartes": {"positive": sorted(d.positive_candidates), "negative": sorted(d.negative_candidates)}}
    if core.degree >= 1:
        out["lagrange"] = frac_str(lagrange_bound(core).radius)
        out["cauchy"] = frac_str(cauchy_bound(core).radius)
    return out


def _baseline_report(p: Poly) -> RootCountReport:
    d = descartes(p)
    zero = p.trailing_zeros()
    neg, pos, cps = combine_counts(p.degree, zero, d.negative_candidates, d.positive_candidates)
    return RootCountReport(p.degree, neg, pos, zero, cps, (), ("sign rule only",), "baselines")


def _monomial_report(m: int) -> RootCountReport:
    zero = AlgebraicReal.rational(0)
    cells = (ReportInterval(zero, zero, "point", (m,), "x = 0"),) if m else ()
    return RootCountReport(m, (0,), (0,), m, (0,), cells, (f"c x^{m}: only root is 0",), "trivial")


def analyze(p: Poly, method: str = "auto", k: Optional[int] = None, width=DEFAULT_WIDTH) -> RootCountReport:
    if p.degree < 1:
        raise UsageError("polynomial must have degree >= 1")
    if method == "baselines":
        return _baseline_report(p)
    core, m = p.strip_zero_roots()
    n = core.degree
    if n == 0:
        return _monomial_report(m)
    if method == "auto":
        report = splits.analyze_leading_split(core, width) if n <= 5 else splits.analyze_recursive(core, width)
    elif method == "leading":
        if n > splits.MAX_ANALYTIC_DEGREE:
            raise UsageError(f"leading split needs degree <= 5 (got {n}); use --method recursive")
        report = splits.analyze_leading_split(core, width)
    elif method == "constant":
        if not 2 <= n <= splits.MAX_ANALYTIC_DEGREE:
            raise UsageError(f"constant split needs 2 <= degree <= 5 (got {n}); use --method recursive")
        report = splits.analyze_constant_split(core, width)
    elif method == "origin":
        if n < 2:
            raise UsageError("origin split needs degree >= 2")
        kk = splits.choose_k(n) if k is None else k
        if not 0 < kk < n:
            raise UsageError(f"--k must satisfy 0 < k < {n}")
        report = splits.analyze_origin_split(splits.make_origin_split(core, kk), width)
    else:
        report = splits.analyze_recursive(core, width)
    return splits.with_zero_roots(report, m)


def _oracle_block(p: Poly, report: RootCountReport) -> tuple[dict, list[str]]:
    try:
        roots = oracle_all_roots(p)
    except OracleError as exc:
        return {"roots": [], "consistent": False, "problems": [str(exc)]}, [str(exc)]
    problems = validate_report(p, report, roots) if report.method != "baselines" else []
    block = {
        "roots": [{"re": r.re, "im": r.im} for r in roots],
        "consistent": not problems,
        "problems": problems,
    }
    return block, problems


def run_analysis(req: AnalysisRequest, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    p = req.polynomial
    report = analyze(p, req.method, req.k, req.width_budget)
    base = baselines(p)
    oracle, problems = (None, [])
    if req.oracle_check:
        oracle, problems = _oracle_block(p, report)
    if req.output == "json":
        doc = report_json(p, report, req.width_budget, base, oracle)
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(f"p(x) = {render(p)}\n{summarize(report)}\n")
        d = base["descartes"]
        line = f"baselines: sign rule positive {d['positive']} negative {d['negative']}"
        if "lagrange" in base:
            line += f", Lagrange {base['lagrange']}, Cauchy {base['cauchy']}"
        out.write(line + "\n")
        if oracle is not None:
            out.write("oracle: " + ("consistent" if not problems else "INCONSISTENT") + "\n")
            for msg in problems:
                out.write(f"  ! {msg}\n")
    if req.plot_path:
        emit_plot_data(req, report)
    return EXIT_INCONSISTENT if problems else EXIT_OK


# ---------------------------------------------------------------------------
# plot data


def split_curves(p: Poly, method: str, k: Optional[int] = None) -> tuple[Poly, Poly]:
    """The two curves lhs, rhs (p = lhs - rhs) that ``method`` compares."""
    core, _ = p.strip_zero_roots()
    n = core.degree
    if method == "baselines" or n < 1:
        return core, Poly()
    if method == "constant":
        monic = core.monic()
        lhs = Poly.monomial(1, n) + Poly.const(monic.tc)
        return lhs, lhs - monic
    if method == "origin" or (method in ("auto", "recursive") and n > 7):
        kk = k if k is not None else splits.choose_k(n)
        s = splits.make_origin_split(core, kk)
        return s.f, s.g
    s = splits.make_leading_split(core)
    return s.q, s.r


def emit_plot_data(req: AnalysisRequest, report: Optional[RootCountReport] = None, points: int = 1024) -> None:
    p = req.polynomial
    if report is None:
        report = analyze(p, req.method, req.k, req.width_budget)
    lhs, rhs = split_curves(p, req.method, req.k)
    core, _ = p.strip_zero_roots()
    radius = cauchy_bound(core).radius if core.degree >= 1 else Fraction(1)
    lo, step = -radius, 2 * radius / (points - 1)
    rows = ["x,lhs,rhs"]
    for i in range(points):
        x = lo + i * step
        rows.append(f"{float(x)!r},{float(evaluate(lhs, x))!r},{float(evaluate(rhs, x))!r}")
    rows.append("# markers")
    rows.append("name,value")
    for name, v in report.markers:
        rows.append(f"{name},{float(v)!r}")
    for i, (r, _) in enumerate(real_roots(lhs) if lhs.degree > 0 else [], 1):
        rows.append(f"lhs_root_{i},{float(r)!r}")
    for i, (r, _) in enumerate(real_roots(rhs) if rhs.degree > 0 else [], 1):
        rows.append(f"rhs_root_{i},{float(r)!r}")
    try:
        with open(req.plot_path, "w") as fh:
            fh.write("\n".join(rows) + "\n")
    except OSError as exc:
        raise UsageError(f"cannot write plot data: {exc}") from None


# ---------------------------------------------------------------------------
# corpus


def corpus_polynomial(seed: int, degree_range: tuple[int, int], height: int) -> Poly:
    rng = random.Random(seed)
    n = rng.randint(*degree_range)
    nonzero = [c for c in range(-height, height + 1) if c]
    cs = [rng.choice(nonzero)] + [rng.randint(-height, height) for _ in range(n - 1)] + [rng.choice(nonzero)]
    return Poly(cs)


def _corpus_case(args: tuple[int, int, tuple[int, int], int]) -> dict:
    index, seed, degrees, height = args
    p = corpus_polynomial(seed, degrees, height)
    report = analyze(p)
    _, problems = _oracle_block(p, report)
    d = descartes(p)
    return {
        "index": index,
        "seed": seed,
        "degree": p.degree,
        "coeffs": [frac_str(c) for c in p.coeffs],
        "exact": report.is_exact,
        "size_method": len(report.negative) + len(report.positive),
        "size_descartes": len(d.negative_candidates) + len(d.positive_candidates),
        "intervals": len(report.intervals),
        "bad_intervals": sum(1 for m in problems if m.startswith("cell")),
        "problems": problems,
    }


def run_corpus(spec: CorpusSpec, jobs: int = 1) -> tuple[dict, int]:
    master = random.Random(spec.seed)
    tasks = [(i, master.getrandbits(64), spec.degree_range, spec.coefficient_height) for i in range(spec.count)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            cases = list(pool.map(_corpus_case, tasks, chunksize=16))
    else:
        cases = [_corpus_case(t) for t in tasks]
    cases.sort(key=lambda c: c["index"])
    summary: dict = {
        "count": spec.count,
        "degrees": list(spec.degree_range),
        "height": spec.coefficient_height,
        "seed": spec.seed,
    }
    violations = [
        {"index": c["index"], "seed": c["seed"], "coeffs": c["coeffs"], "problems": c["problems"]}
        for c in cases
        if c["problems"]
    ]
    summary["violations"] = violations
    if cases:
        total_iv = sum(c["intervals"] for c in cases)
        summary["exact_count_rate"] = round(sum(c["exact"] for c in cases) / len(cases), 6)
        summary["mean_candidates_method"] = round(sum(c["size_method"] for c in cases) / len(cases), 6)
        summary["mean_candidates_descartes"] = round(sum(c["size_descartes"] for c in cases) / len(cases), 6)
        summary["interval_coverage"] = (
            round(1 - sum(c["bad_intervals"] for c in cases) / total_iv, 6) if total_iv else 1.0
        )
        by_degree: dict[str, dict] = {}
        for c in cases:
            b = by_degree.setdefault(str(c["degree"]), {"count": 0, "exact": 0})
            b["count"] += 1
            b["exact"] += int(c["exact"])
        summary["by_degree"] = by_degree
    return summary, (EXIT_INCONSISTENT if violations else EXIT_OK)


# ---------------------------------------------------------------------------
# entry point


def _degrees(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyzero", description="Count and bracket real polynomial roots.")
    sub = ap.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="analyse one polynomial")
    an.add_argument("poly", help='coefficients "a_n,...,a_0" or an expression like "3x^3 - 4x + 1"')
    an.add_argument("--method", choices=METHODS, default="auto")
    an.add_argument("--k", type=int)
    an.add_argument("--width", type=_rational, help="width budget for printed enclosures")
    an.add_argument("--json", action="store_true")
    an.add_argument("--plot", metavar="FILE")
    an.add_argument("--oracle", action="store_true", help="cross-check against numeric roots")
    co = sub.add_parser("corpus", help="validate on random polynomials")
    co.add_argument("--count", type=int, default=100)
    co.add_argument("--degrees", type=_degrees, default=(2, 9))
    co.add_argument("--height", type=int, default=20)
    co.add_argument("--seed", type=int, default=0)
    co.add_argument("--jobs", type=int, default=1)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            req = AnalysisRequest(
                parse_polynomial(args.poly),
                args.method,
                args.k,
                args.width if args.width is not None else default_width(),
                "json" if args.json else "text",
                args.plot,
                args.oracle,
            )
            return run_analysis(req)
        spec = CorpusSpec(args.count, args.degrees, args.height, args.seed)
        summary, status = run_corpus(spec, args.jobs)
        print(json.dumps(summary, indent=2, sort_keys=True))
        return status
    except (ParseError, UsageError) as exc:
        print(f"polyzero: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
