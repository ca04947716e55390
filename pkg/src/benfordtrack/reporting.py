"""Report assembly and emission as aligned text, CSV or JSON.

Emission is deterministic: rows are ordered by entity, tenor and then
period position or window index, machine formats carry full float
precision via repr, and the JSON document is canonical (sorted keys,
fixed indentation), so identical reports always serialize to identical
bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Collection, Iterable, Mapping, Sequence

from .panel import ChangeSeries
from .stats import ConformityStats
from .windows import PeriodSpec, WindowResult, WindowSpec, analyze_period, track

PERIOD_CSV_HEADER = "entity,tenor,period,chi2,p_value,verdict,n,small_sample"
TRACK_CSV_HEADER = "entity,tenor,window,start_date,end_date,n,chi2,p_value,chebyshev,kl"

TREND_METRICS = ("chi2", "chebyshev", "kl")

_ROMAN = (
    (1000, "M"), (900, "CM"), (500, "D"), (400, "CD"),
    (100, "C"), (90, "XC"), (50, "L"), (40, "XL"),
    (10, "X"), (9, "IX"), (5, "V"), (4, "IV"), (1, "I"),
)


def roman(n: int) -> str:
    """Roman numeral for a positive integer (window labels in text output)."""
    if n < 1:
        raise ValueError("roman numerals start at 1")
    parts = []
    for value, glyph in _ROMAN:
        while n >= value:
            parts.append(glyph)
            n -= value
    return "".join(parts)


@dataclass(frozen=True)
class TrendFit:
    """Least-squares line of one metric against the 1-based window index."""

    metric: str
    slope: float
    intercept: float
    r_squared: float


@dataclass(frozen=True)
class PeriodRow:
    """One (entity, tenor, period) cell; failed cells carry `error` instead."""

    entity: str
    tenor: str
    period: str
    stats: ConformityStats | None
    error: str | None = None


@dataclass(frozen=True)
class PeriodReport:
    rows: tuple[PeriodRow, ...]
    meta: Mapping


@dataclass(frozen=True)
class TrackRow:
    entity: str
    tenor: str
    result: WindowResult


@dataclass(frozen=True)
class TrackReport:
    rows: tuple[TrackRow, ...]
    trends: tuple[tuple[str, str, TrendFit], ...]
    meta: Mapping


def _metric_value(stats: ConformityStats, metric: str) -> float:
    if metric == "chi2":
        return stats.chi_square
    if metric == "chebyshev":
        return stats.chebyshev
    if metric == "kl":
        return stats.kl_divergence
    raise ValueError(f"metric must be one of {TREND_METRICS}")


def fit_trend(results: Sequence[WindowResult], metric: str) -> TrendFit:
    """Ordinary least squares of a window metric on the window index.

    The regressor is the 1-based window index.  A constant metric
    sequence fits slope 0 with r_squared defined as 0.
    """
    if len(results) < 2:
        raise ValueError("insufficient windows for trend")
    y = [_metric_value(r.stats, metric) for r in results]
    x = [float(r.index) for r in results]
    n = len(x)
    x_mean = sum(x) / n
    y_mean = sum(y) / n
    sxx = sum((xi - x_mean) ** 2 for xi in x)
    sxy = sum((xi - x_mean) * (yi - y_mean) for xi, yi in zip(x, y))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    ss_tot = sum((yi - y_mean) ** 2 for yi in y)
    if ss_tot == 0.0:
        r_squared = 0.0
    else:
        ss_res = sum((yi - (intercept + slope * xi)) ** 2 for xi, yi in zip(x, y))
        r_squared = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return TrendFit(metric, slope, intercept, r_squared)


def _select(
    series: Iterable[ChangeSeries], tenors: Collection[str] | None
) -> list[ChangeSeries]:
    kept = [s for s in series if tenors is None or s.tenor in tenors]
    return sorted(kept, key=lambda s: (s.entity, s.tenor))


def build_period_report(
    series: Iterable[ChangeSeries],
    periods: Sequence[PeriodSpec],
    alpha: float = 0.05,
    tenors: Collection[str] | None = None,
    meta: Mapping | None = None,
) -> PeriodReport:
    """One row per (entity, tenor, period), periods kept in given order.

    A cell that cannot be measured (an empty slice, or one holding only
    zero changes) becomes an annotated row instead of an error.
    """
    rows = []
    for s in _select(series, tenors):
        for period in periods:
            try:
                stats = analyze_period(s, period, alpha)
                rows.append(PeriodRow(s.entity, s.tenor, period.label, stats))
            except ValueError as exc:
                rows.append(PeriodRow(s.entity, s.tenor, period.label, None, str(exc)))
    return PeriodReport(tuple(rows), dict(meta or {}))


def build_track_report(
    series: Iterable[ChangeSeries],
    spec: WindowSpec = WindowSpec(),
    alpha: float = 0.05,
    tenors: Collection[str] | None = None,
    meta: Mapping | None = None,
) -> TrackReport:
    """Rolling-window rows plus per-series trend fits for every metric.

    Trend fits need at least two windows; a series yielding a single
    window contributes rows but no trends.
    """
    rows = []
    trends = []
    for s in _select(series, tenors):
        results = track(s, spec, alpha)
        rows.extend(TrackRow(s.entity, s.tenor, r) for r in results)
        if len(results) >= 2:
            for metric in TREND_METRICS:
                trends.append((s.entity, s.tenor, fit_trend(results, metric)))
    return TrackReport(tuple(rows), tuple(trends), dict(meta or {}))


def _table(header: list[str], body: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in body:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = []
    for row in [header] + body:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _period_cells(row: PeriodRow) -> list[str]:
    if row.error is not None:
        return [row.entity, row.tenor, row.period, "-", "-", row.error, "-", "-"]
    s = row.stats
    return [
        row.entity,
        row.tenor,
        row.period,
        f"{s.chi_square:.4f}",
        f"{s.p_value:.4f}",
        s.verdict,
        str(s.sample_size),
        str(s.small_sample_flag).lower(),
    ]


def _emit_period_text(report: PeriodReport) -> str:
    header = PERIOD_CSV_HEADER.split(",")
    return _table(header, [_period_cells(r) for r in report.rows])


def _emit_period_csv(report: PeriodReport) -> str:
    lines = [PERIOD_CSV_HEADER]
    for row in report.rows:
        if row.error is not None:
            lines.append(f"{row.entity},{row.tenor},{row.period},,,{row.error},,")
        else:
            s = row.stats
            lines.append(
                f"{row.entity},{row.tenor},{row.period},{s.chi_square!r},"
                f"{s.p_value!r},{s.verdict},{s.sample_size},"
                f"{str(s.small_sample_flag).lower()}"
            )
    return "\n".join(lines) + "\n"


def _period_doc(report: PeriodReport) -> dict:
    rows = []
    for row in report.rows:
        if row.error is not None:
            rows.append(
                {
                    "entity": row.entity,
                    "tenor": row.tenor,
                    "period": row.period,
                    "chi2": None,
                    "p_value": None,
                    "verdict": row.error,
                    "n": None,
                    "small_sample": None,
                }
            )
        else:
            s = row.stats
            rows.append(
                {
                    "entity": row.entity,
                    "tenor": row.tenor,
                    "period": row.period,
                    "chi2": s.chi_square,
                    "p_value": s.p_value,
                    "verdict": s.verdict,
                    "n": s.sample_size,
                    "small_sample": s.small_sample_flag,
                }
            )
    return {"meta": dict(report.meta), "rows": rows}


def _track_cells(row: TrackRow) -> list[str]:
    r = row.result
    s = r.stats
    return [
        row.entity,
        row.tenor,
        roman(r.index),
        r.start_date.isoformat(),
        r.end_date.isoformat(),
        str(s.sample_size),
        f"{s.chi_square:.4f}",
        f"{s.p_value:.4f}",
        f"{s.chebyshev:.4f}",
        f"{s.kl_divergence:.4f}",
    ]


def _emit_track_text(report: TrackReport) -> str:
    header = TRACK_CSV_HEADER.split(",")
    out = _table(header, [_track_cells(r) for r in report.rows])
    if report.trends:
        lines = ["", "trends:"]
        for entity, tenor, fit in report.trends:
            lines.append(
                f"{entity}  {tenor}  {fit.metric}  slope={fit.slope:.4f}  "
                f"intercept={fit.intercept:.4f}  r_squared={fit.r_squared:.4f}"
            )
        out += "\n".join(lines) + "\n"
    return out


def _emit_track_csv(report: TrackReport) -> str:
    lines = [TRACK_CSV_HEADER]
    for row in report.rows:
        r = row.result
        s = r.stats
        lines.append(
            f"{row.entity},{row.tenor},{r.index},{r.start_date.isoformat()},"
            f"{r.end_date.isoformat()},{s.sample_size},{s.chi_square!r},"
            f"{s.p_value!r},{s.chebyshev!r},{s.kl_divergence!r}"
        )
    return "\n".join(lines) + "\n"


def _track_doc(report: TrackReport) -> dict:
    rows = []
    for row in report.rows:
        r = row.result
        s = r.stats
        rows.append(
            {
                "entity": row.entity,
                "tenor": row.tenor,
                "window": r.index,
                "start_date": r.start_date.isoformat(),
                "end_date": r.end_date.isoformat(),
                "n": s.sample_size,
                "chi2": s.chi_square,
                "p_value": s.p_value,
                "chebyshev": s.chebyshev,
                "kl": s.kl_divergence,
            }
        )
    trends: dict = {}
    for entity, tenor, fit in report.trends:
        trends.setdefault(entity, {}).setdefault(tenor, {})[fit.metric] = {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "r_squared": fit.r_squared,
        }
    return {"meta": dict(report.meta), "rows": rows, "trends": trends}


def canonical_json(doc) -> str:
    """The one JSON rendering used everywhere: sorted keys, 2-space indent."""
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def emit(report: PeriodReport | TrackReport, fmt: str = "text") -> str:
    """Serialize a report as "text", "csv" or "json"."""
    if isinstance(report, PeriodReport):
        if fmt == "text":
            return _emit_period_text(report)
        if fmt == "csv":
            return _emit_period_csv(report)
        if fmt == "json":
            return canonical_json(_period_doc(report))
    elif isinstance(report, TrackReport):
        if fmt == "text":
            return _emit_track_text(report)
        if fmt == "csv":
            return _emit_track_csv(report)
        if fmt == "json":
            return canonical_json(_track_doc(report))
    else:
        raise TypeError("report must be a PeriodReport or TrackReport")
    raise ValueError('format must be one of "text", "csv", "json"')
