"""Report construction, trend fits and text/CSV/JSON emission."""

import json
from datetime import date

import pytest

from benfordtrack import (
    ConformityStats,
    PeriodReport,
    PeriodRow,
    TrackReport,
    WindowResult,
    WindowSpec,
    build_period_report,
    build_track_report,
    emit,
    fit_trend,
    gen_benford,
    named_periods,
    roman,
)
from benfordtrack.reporting import (
    PERIOD_CSV_HEADER,
    TRACK_CSV_HEADER,
    TREND_METRICS,
    canonical_json,
)
from helpers import make_change_series


# ---------------------------------------------------------------- roman

@pytest.mark.parametrize(
    "n,expected",
    [
        (1, "I"),
        (4, "IV"),
        (9, "IX"),
        (14, "XIV"),
        (28, "XXVIII"),
        (38, "XXXVIII"),
        (40, "XL"),
        (90, "XC"),
        (1990, "MCMXC"),
        (2026, "MMXXVI"),
    ],
)
def test_roman_numerals(n, expected):
    assert roman(n) == expected


def test_roman_rejects_nonpositive():
    with pytest.raises(ValueError):
        roman(0)
    with pytest.raises(ValueError):
        roman(-5)


# ---------------------------------------------------------------- trend

def _stats(chi2, cheb=0.01, kl=0.02, n=90):
    return ConformityStats(
        chi_square=chi2,
        p_value=0.5,
        verdict="accept",
        chebyshev=cheb,
        kl_divergence=kl,
        sample_size=n,
        small_sample_flag=n < 109,
    )


def _results(chi_values):
    d0 = date(2010, 1, 1)
    return [
        WindowResult(i + 1, d0, d0, 90, _stats(v)) for i, v in enumerate(chi_values)
    ]


def test_fit_trend_recovers_an_exact_line():
    fit = fit_trend(_results([5.0, 7.0, 9.0, 11.0]), "chi2")
    assert fit.metric == "chi2"
    assert fit.slope == pytest.approx(2.0, abs=1e-12)
    assert fit.intercept == pytest.approx(3.0, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


def test_fit_trend_constant_sequence():
    fit = fit_trend(_results([4.0, 4.0, 4.0]), "chi2")
    assert fit.slope == 0.0
    assert fit.intercept == 4.0
    assert fit.r_squared == 0.0


def test_fit_trend_noisy_line_keeps_r_squared_in_bounds():
    fit = fit_trend(_results([1.0, 3.5, 2.0, 5.0, 4.5]), "chi2")
    assert 0.0 <= fit.r_squared <= 1.0
    assert fit.slope > 0.0


def test_fit_trend_reads_the_requested_metric():
    d0 = date(2010, 1, 1)
    results = [
        WindowResult(1, d0, d0, 90, _stats(1.0, cheb=0.10, kl=0.30)),
        WindowResult(2, d0, d0, 90, _stats(1.0, cheb=0.20, kl=0.20)),
        WindowResult(3, d0, d0, 90, _stats(1.0, cheb=0.30, kl=0.10)),
    ]
    assert fit_trend(results, "chebyshev").slope == pytest.approx(0.1, abs=1e-12)
    assert fit_trend(results, "kl").slope == pytest.approx(-0.1, abs=1e-12)


def test_fit_trend_validation():
    with pytest.raises(ValueError, match="insufficient windows"):
        fit_trend(_results([1.0]), "chi2")
    with pytest.raises(ValueError, match="metric"):
        fit_trend(_results([1.0, 2.0]), "median")


# -------------------------------------------------------- period report

def _panel():
    # four series spanning the full date range, one per (entity, tenor)
    out = []
    seed = 0
    for entity in ("AT", "DE"):
        for tenor in ("10Y", "5Y"):
            out.append(
                make_change_series(
                    list(gen_benford(1750, seed=seed)),
                    start=date(2008, 8, 8),
                    entity=entity,
                    tenor=tenor,
                )
            )
            seed += 1
    return out


def test_build_period_report_row_grid():
    report = build_period_report(_panel(), named_periods())
    assert len(report.rows) == 20
    labels = [r.period for r in report.rows[:5]]
    assert labels == ["full", "pre_crisis", "crisis", "post_crisis", "post2010"]
    keys = [(r.entity, r.tenor) for r in report.rows]
    assert keys == sorted(keys)
    assert all(r.error is None for r in report.rows)


def test_build_period_report_annotates_uncoverable_periods():
    late = make_change_series(
        list(gen_benford(200, seed=1)), start=date(2011, 3, 1), entity="GR"
    )
    report = build_period_report([late], named_periods())
    by_period = {r.period: r for r in report.rows}
    assert by_period["pre_crisis"].stats is None
    assert "pre_crisis" in by_period["pre_crisis"].error
    assert by_period["crisis"].stats is not None


def test_build_period_report_tenor_filter():
    report = build_period_report(_panel(), named_periods(), tenors={"5Y"})
    assert len(report.rows) == 10
    assert all(r.tenor == "5Y" for r in report.rows)


def test_build_period_report_meta_passthrough():
    report = build_period_report(_panel()[:1], named_periods()[:1], meta={"run": 3})
    assert report.meta == {"run": 3}


# --------------------------------------------------------- track report

def test_build_track_report_counts_rows_and_trends():
    panel = [
        make_change_series(list(gen_benford(400, seed=1)), entity="AT"),
        make_change_series(list(gen_benford(400, seed=2)), entity="DE"),
    ]
    report = build_track_report(panel, WindowSpec())
    # 400 observations make seven full windows plus one 85-long tail
    assert len(report.rows) == 16
    assert len(report.trends) == 6
    metrics = {fit.metric for _, _, fit in report.trends}
    assert metrics == set(TREND_METRICS)


def test_build_track_report_single_window_has_no_trends():
    panel = [make_change_series(list(gen_benford(50, seed=1)))]
    report = build_track_report(panel, WindowSpec())
    assert len(report.rows) == 1
    assert report.trends == ()


# ----------------------------------------------------------- text table

def _tiny_period_report():
    row = PeriodRow("DE", "5Y", "full", _stats(12.3456789, n=100))
    bad = PeriodRow("DE", "5Y", "pre_crisis", None, "empty slice for period 'pre_crisis'")
    return PeriodReport((row, bad), {"alpha": 0.05})


def test_period_text_layout():
    text = emit(_tiny_period_report(), "text")
    lines = text.splitlines()
    assert lines[0].split() == PERIOD_CSV_HEADER.split(",")
    assert lines[1].split() == ["DE", "5Y", "full", "12.3457", "0.5000", "accept", "100", "true"]
    assert "empty slice" in lines[2]
    assert all(line == line.rstrip() for line in lines)
    assert text.endswith("\n")


def test_track_text_uses_roman_window_labels():
    panel = [make_change_series(list(gen_benford(400, seed=1)), entity="AT")]
    report = build_track_report(panel, WindowSpec())
    text = emit(report, "text")
    lines = text.splitlines()
    assert lines[0].split() == TRACK_CSV_HEADER.split(",")
    assert lines[1].split()[2] == "I"
    assert lines[8].split()[2] == "VIII"
    assert "trends:" in text
    assert text.count("slope=") == 3


# ------------------------------------------------------------------ csv

def test_period_csv_is_exact():
    got = emit(_tiny_period_report(), "csv")
    assert got == (
        "entity,tenor,period,chi2,p_value,verdict,n,small_sample\n"
        "DE,5Y,full,12.3456789,0.5,accept,100,true\n"
        "DE,5Y,pre_crisis,,,empty slice for period 'pre_crisis',,\n"
    )


def test_csv_floats_round_trip_exactly():
    panel = [make_change_series(list(gen_benford(1750, seed=4)))]
    report = build_period_report(panel, named_periods())
    body = emit(report, "csv").splitlines()[1:]
    for row, line in zip(report.rows, body):
        cells = line.split(",")
        assert float(cells[3]) == row.stats.chi_square
        assert float(cells[4]) == row.stats.p_value


def test_track_csv_layout():
    panel = [make_change_series(list(gen_benford(90, seed=1)), entity="AT")]
    report = build_track_report(panel, WindowSpec())
    lines = emit(report, "csv").splitlines()
    assert lines[0] == TRACK_CSV_HEADER
    assert len(lines) == 3
    first = lines[1].split(",")
    assert first[0] == "AT"
    assert first[2] == "1"  # machine format keeps plain integers
    # changes are dated at the later observation: the Monday after the start
    assert first[3] == "2008-08-11"
    assert float(first[6]) == report.rows[0].result.stats.chi_square


# ----------------------------------------------------------------- json

def test_period_json_document():
    doc = json.loads(emit(_tiny_period_report(), "json"))
    assert set(doc) == {"meta", "rows"}
    assert doc["meta"] == {"alpha": 0.05}
    assert doc["rows"][0]["chi2"] == 12.3456789
    assert doc["rows"][0]["small_sample"] is True
    assert doc["rows"][1]["chi2"] is None
    assert doc["rows"][1]["verdict"].startswith("empty slice")


def test_track_json_document_nests_trends():
    panel = [make_change_series(list(gen_benford(400, seed=1)), entity="AT")]
    report = build_track_report(panel, WindowSpec())
    doc = json.loads(emit(report, "json"))
    assert set(doc) == {"meta", "rows", "trends"}
    assert len(doc["rows"]) == 8
    fits = doc["trends"]["AT"]["5Y"]
    assert set(fits) == set(TREND_METRICS)
    for fit in fits.values():
        assert set(fit) == {"slope", "intercept", "r_squared"}


def test_canonical_json_is_byte_stable():
    doc = {"b": [1.5, None], "a": {"y": True, "x": "s"}}
    once = canonical_json(doc)
    again = canonical_json(json.loads(once))
    assert once == again
    assert once == '{\n  "a": {\n    "x": "s",\n    "y": true\n  },\n  "b": [\n    1.5,\n    null\n  ]\n}\n'


def test_canonical_json_refuses_nan():
    with pytest.raises(ValueError):
        canonical_json({"x": float("nan")})


def test_json_emission_round_trips_float_values():
    panel = [make_change_series(list(gen_benford(300, seed=8)))]
    report = build_track_report(panel, WindowSpec())
    doc = json.loads(emit(report, "json"))
    for row, entry in zip(report.rows, doc["rows"]):
        assert entry["chi2"] == row.result.stats.chi_square
        assert entry["kl"] == row.result.stats.kl_divergence


# ------------------------------------------------------------ emit guard

def test_emit_rejects_unknown_format_and_type():
    report = _tiny_period_report()
    with pytest.raises(ValueError, match="format"):
        emit(report, "yaml")
    with pytest.raises(TypeError):
        emit({"rows": []}, "text")


def test_emission_is_deterministic_across_calls():
    panel = [make_change_series(list(gen_benford(400, seed=3)))]
    for fmt in ("text", "csv", "json"):
        a = emit(build_track_report(panel, WindowSpec()), fmt)
        b = emit(build_track_report(panel, WindowSpec()), fmt)
        assert a == b
