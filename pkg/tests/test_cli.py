import io
import json
import random
from fractions import Fraction as F
from importlib import resources

import jsonschema
import pytest

from polyzero import cli
from polyzero.cli import AnalysisRequest, CorpusSpec, UsageError, corpus_polynomial, emit_plot_data, main, run_analysis, run_corpus
from polyzero.exactpoly import Poly, render
from polyzero.parser import ParseError, parse_polynomial

SCHEMA = json.loads(resources.files("polyzero").joinpath("schema.json").read_text())
QUINTIC = "-1/12 x^5 + 1/4 x^4 + 5/12 x^3 - 5/4 x^2 - 1/3 x + 1"
NONIC = "x^9 + 1/2 x^8 - 7x^7 - 2x^6 + 9x^5 - x^4 - 2x^3 + 13x^2 + 14x - 24"


def run_json(text, **kw):
    out = io.StringIO()
    status = run_analysis(AnalysisRequest(parse_polynomial(text), output="json", **kw), out)
    doc = json.loads(out.getvalue())
    jsonschema.validate(doc, SCHEMA)
    return status, doc


# parsing


def test_parse_examples():
    assert parse_polynomial("3x^3 - 4x + 1").coeffs == (1, -4, 0, 3)
    septic = parse_polynomial("16/3 x^7 - 52/3 x^6 + 14/3 x^5 + 77/3 x^4 - 77/6 x^3 - 28/3 x^2 + 17/6 x + 1")
    assert septic.coeffs[::-1] == (F(16, 3), F(-52, 3), F(14, 3), F(77, 3), F(-77, 6), F(-28, 3), F(17, 6), 1)
    assert parse_polynomial("1, -4/3, 0, 2") == Poly([2, 0, F(-4, 3), 1])
    assert parse_polynomial("1 0 -1") == Poly([-1, 0, 1])
    assert parse_polynomial("2(x - 1)^2") == Poly([2, -4, 2])
    assert parse_polynomial("x**2 - 0.5") == Poly([F(-1, 2), 0, 1])
    assert parse_polynomial("t^2 + t") == Poly([0, 1, 1])


@pytest.mark.parametrize(
    "text, message",
    [
        ("0", "zero polynomial"),
        ("", "empty input"),
        ("   ", "empty input"),
        ("x^2 +* 1", "column 6"),
        ("1/0, 2", "division by zero"),
        ("x / 0", "division by zero"),
        ("x/(x+1)", "non-constant"),
        ("(x + 1", "expected ')'"),
        ("x + y", "second variable"),
        ("x^-1", "exponent"),
        ("3 $", "column 3"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message.replace("(", "\\(").replace(")", "\\)")):
        parse_polynomial(text)


def test_render_round_trip():
    rng = random.Random(0)
    for _ in range(300):
        p = corpus_polynomial(rng.getrandbits(64), (1, 9), 20)
        assert parse_polynomial(render(p)) == p


# analysis


def test_quintic_json():
    status, doc = run_json(QUINTIC, method="leading", oracle_check=True)
    assert status == 0
    assert doc["counts"] == {"positive": 3, "negative": 2, "zero": 0, "complex_pairs": 0}
    assert doc["oracle"]["consistent"]
    assert sorted(round(r["re"], 6) for r in doc["oracle"]["roots"]) == [-2, -1, 1, 2, 3]
    assert doc["deductions"]


def test_nonic_origin_json():
    status, doc = run_json(NONIC, method="origin", k=5)
    assert status == 0
    b = doc["baselines"]
    assert b["descartes"] == {"positive": [1, 3, 5], "negative": [0, 2, 4]}
    assert b["lagrange"] == "145/2" and b["cauchy"] == "25/1"
    pair = [iv for iv in doc["intervals"] if iv["candidates"] == [0, 2]]
    assert len(pair) == 1
    lo, hi = (float(F(pair[0][k])) for k in ("lo", "hi"))
    assert lo == pytest.approx(1.145, abs=1e-3) and hi == pytest.approx(2.230, abs=1e-3)


def test_open_cells_print_inner_rationals():
    _, doc = run_json("x^2 - 2", width_budget=F(1, 2**20))
    ends = [(F(iv["lo"]), F(iv["hi"])) for iv in doc["intervals"] if iv["lo"] not in ("-inf",) and iv["hi"] != "inf"]
    for lo, hi in ends:
        assert lo < hi
    root = 2 ** 0.5
    assert any(abs(float(hi) - root) < 2**-19 for _, hi in ends)


def test_complex_only_with_oracle():
    status, doc = run_json("x^2+1", oracle_check=True)
    assert status == 0 and doc["counts"]["complex_pairs"] == 1 and doc["oracle"]["consistent"]


def test_zero_roots_are_lifted():
    status, doc = run_json("x^3 (x - 1)", oracle_check=True)
    assert status == 0 and doc["counts"]["zero"] == 3 and doc["counts"]["positive"] == 1
    _, mono = run_json("5x^4")
    assert mono["counts"]["zero"] == 4


def test_every_method_runs():
    for method in ("auto", "leading", "origin", "constant", "recursive", "baselines"):
        status, doc = run_json("x^4 - 5x^2 + 4", method=method, oracle_check=True)
        assert status == 0, method
        assert doc["deductions"]


def test_inconsistency_exits_2(monkeypatch):
    def broken(p, report, roots):
        return ["planted disagreement"]

    monkeypatch.setattr(cli, "validate_report", broken)
    out = io.StringIO()
    assert run_analysis(AnalysisRequest(parse_polynomial("x^2 - 1"), oracle_check=True), out) == 2
    assert "INCONSISTENT" in out.getvalue()


def test_request_validation():
    with pytest.raises(UsageError):
        AnalysisRequest(Poly([1, 1]), method="leading", k=2)
    with pytest.raises(UsageError):
        AnalysisRequest(Poly([1, 1]), method="nope")
    assert AnalysisRequest(Poly([1, 1]), method="baselines-only").method == "baselines"


def test_main_exit_codes(capsys):
    assert main(["analyze", "3x^3 - 4x + 1"]) == 0
    assert "positive: 2" in capsys.readouterr().out
    assert main(["analyze", "x^^2"]) == 1
    assert "column" in capsys.readouterr().err
    assert main(["analyze", "x^7 + x + 1", "--method", "leading"]) == 1
    assert main(["analyze", "x + 1", "--k", "1"]) == 1


def test_width_env(monkeypatch, capsys):
    monkeypatch.setenv("POLYZERO_WIDTH", "1/4")
    assert main(["analyze", "x^2 - 2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    fine = [F(iv["hi"]) for iv in doc["intervals"] if iv["hi"] != "inf"]
    assert all(f.denominator <= 4 for f in fine)
    monkeypatch.setenv("POLYZERO_WIDTH", "zero")
    assert main(["analyze", "x^2 - 2"]) == 1


# plot data


def read_plot(path):
    text = path.read_text().splitlines()
    cut = text.index("# markers")
    rows = [tuple(map(float, line.split(","))) for line in text[1:cut]]
    marks = dict(line.split(",") for line in text[cut + 2 :])
    return text[0], rows, {k: float(v) for k, v in marks.items()}


def test_plot_quintic(tmp_path):
    path = tmp_path / "q.csv"
    emit_plot_data(AnalysisRequest(parse_polynomial(QUINTIC), method="leading", plot_path=str(path)))
    header, rows, marks = read_plot(path)
    assert header == "x,lhs,rhs" and len(rows) == 1024
    diff = [(x, l - r) for x, l, r in rows]
    crossings = [x for (x, d), (_, e) in zip(diff, diff[1:]) if d == 0 or d * e < 0]
    step = rows[1][0] - rows[0][0]
    for root in (-2, -1, 1, 2, 3):
        assert any(abs(x - root) <= step for x in crossings)
    assert "chi_2" in marks and "alpha_1" in marks


def test_plot_line_and_nonic(tmp_path):
    path = tmp_path / "l.csv"
    emit_plot_data(AnalysisRequest(parse_polynomial("x + 1"), plot_path=str(path)))
    _, rows, _ = read_plot(path)
    slopes = {round((b[1] - a[1]) / (b[0] - a[0]), 9) for a, b in zip(rows, rows[1:])}
    assert len(slopes) == 1
    path = tmp_path / "n.csv"
    emit_plot_data(AnalysisRequest(parse_polynomial(NONIC), method="origin", k=5, plot_path=str(path)))
    _, _, marks = read_plot(path)
    assert marks["g_1"] == -4 and marks["f_1"] == pytest.approx(-2.416, abs=1e-3)


def test_plot_unwritable(tmp_path):
    req = AnalysisRequest(parse_polynomial("x + 1"), plot_path=str(tmp_path / "missing" / "p.csv"))
    with pytest.raises(UsageError):
        emit_plot_data(req)


# corpus


def test_corpus_cubics_exact():
    summary, status = run_corpus(CorpusSpec(150, (3, 3), 10, 42))
    assert status == 0 and summary["violations"] == []
    assert summary["exact_count_rate"] == 1.0 and summary["interval_coverage"] == 1.0


def test_corpus_deterministic_and_parallel_safe():
    spec = CorpusSpec(40, (2, 9), 20, 7)
    a, _ = run_corpus(spec)
    b, _ = run_corpus(spec, jobs=2)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["mean_candidates_method"] <= a["mean_candidates_descartes"]


def test_corpus_high_degree_allows_candidate_sets():
    summary, status = run_corpus(CorpusSpec(60, (9, 9), 20, 7))
    assert status == 0 and summary["exact_count_rate"] < 1.0


def test_corpus_empty(capsys):
    assert main(["corpus", "--count", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["violations"] == []


def test_corpus_spec_validation():
    with pytest.raises(UsageError):
        CorpusSpec(5, (4, 2), 10, 1)
