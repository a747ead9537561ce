"""Exact real-root counting and bracketing for univariate polynomials."""

from .exactpoly import ParamPoly, Poly, discriminant, discriminant_in_parameter, render
from .parser import ParseError, parse_polynomial
from .realroots import AlgebraicReal, isolate_real_roots, oracle_all_roots, real_roots
from .report import ReportInterval, RootCountReport, report_json, summarize, validate_report
from .splits import (
    analyze_constant_split,
    analyze_leading_split,
    analyze_origin_split,
    analyze_recursive,
    make_leading_split,
    make_origin_split,
)

__all__ = [
    "AlgebraicReal",
    "ParamPoly",
    "ParseError",
    "Poly",
    "ReportInterval",
    "RootCountReport",
    "analyze_constant_split",
    "analyze_leading_split",
    "analyze_origin_split",
    "analyze_recursive",
    "discriminant",
    "discriminant_in_parameter",
    "isolate_real_roots",
    "make_leading_split",
    "make_origin_split",
    "oracle_all_roots",
    "parse_polynomial",
    "real_roots",
    "render",
    "report_json",
    "summarize",
    "validate_report",
]
