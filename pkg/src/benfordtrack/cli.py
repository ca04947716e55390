"""Command-line interface.

Three subcommands: `analyze` tests panel changes against the
first-digit law over date ranges, `track` follows conformity through
rolling windows, and `synth` writes synthetic panels with a controlled
digit distribution.  Exit codes: 0 on success, 1 for usage or
configuration errors (reported before any input is read), 2 for data
errors such as parse failures or series too short to analyze.
"""

from __future__ import annotations

import argparse
import sys
from datetime import date

from . import __version__
from .panel import daily_changes, parse_panel, serialize_panel
from .reporting import build_period_report, build_track_report, emit
from .synthetic import SynthSpec, synth_panel
from .windows import PeriodSpec, WindowSpec, named_periods

_PERIOD_LABELS = tuple(p.label for p in named_periods())


class _Parser(argparse.ArgumentParser):
    # usage errors exit with 1, leaving 2 for data errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_io_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", default="-", help="panel CSV path, - for stdin")
    sub.add_argument("--out", default="-", help="output path, - for stdout")
    sub.add_argument(
        "--format", choices=("text", "csv", "json"), default="text",
        help="output format",
    )


def _add_change_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--alpha", type=float, default=0.05, help="significance level")
    sub.add_argument(
        "--tenor", action="append", default=None, metavar="TENOR",
        help="restrict to this tenor (repeatable; default all)",
    )
    sub.add_argument(
        "--change-mode", choices=("absolute", "relative"), default="absolute",
        help="daily change definition",
    )
    sub.add_argument(
        "--max-gap-days", type=int, default=None, metavar="DAYS",
        help="drop change pairs further apart than this (default unlimited)",
    )
    sub.add_argument(
        "--from", dest="date_from", type=date.fromisoformat, default=None,
        metavar="DATE", help="custom range start (ISO date)",
    )
    sub.add_argument(
        "--to", dest="date_to", type=date.fromisoformat, default=None,
        metavar="DATE", help="custom range end (ISO date)",
    )


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="benfordtrack",
        description="First-digit law conformity testing for time-series panels.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    analyze = subs.add_parser(
        "analyze",
        help="test daily changes over date ranges",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_io_flags(analyze)
    _add_change_flags(analyze)
    analyze.add_argument(
        "--period", action="append", choices=_PERIOD_LABELS, default=None,
        help="named period to test (repeatable; default all five)",
    )
    analyze.set_defaults(handler=_cmd_analyze)

    track_cmd = subs.add_parser(
        "track",
        help="follow conformity through rolling windows",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_io_flags(track_cmd)
    _add_change_flags(track_cmd)
    track_cmd.add_argument(
        "--window-len", type=int, default=90, help="observations per window"
    )
    track_cmd.add_argument(
        "--step", type=int, default=45, help="observations between window starts"
    )
    track_cmd.add_argument(
        "--min-fill", type=float, default=0.5,
        help="minimum trailing window fill as a fraction of --window-len",
    )
    track_cmd.set_defaults(handler=_cmd_track)

    synth = subs.add_parser(
        "synth",
        help="write a synthetic panel CSV",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    synth.add_argument(
        "--kind", choices=("benford", "uniform_digit", "constant"), required=True,
        help="digit distribution of the generated changes",
    )
    synth.add_argument("--n", type=int, required=True, help="number of changes")
    synth.add_argument(
        "--seed", type=int, required=True,
        help="RNG seed (required; there is no silent default)",
    )
    synth.add_argument("--entity", default="SYNTH", help="entity label")
    synth.add_argument("--tenor", default="5Y", help="tenor label")
    synth.add_argument(
        "--start-date", type=date.fromisoformat, default=date(2008, 8, 8),
        metavar="DATE", help="first observation date (weekdays from here)",
    )
    synth.add_argument(
        "--base-spread", type=float, default=100.0,
        help="spread level the changes accumulate on",
    )
    synth.add_argument(
        "--manip-fraction", type=float, default=None, metavar="FRACTION",
        help="fraction of values to rewrite toward --manip-digit",
    )
    synth.add_argument(
        "--manip-digit", type=int, default=None, metavar="DIGIT",
        help="first digit forced onto the rewritten values",
    )
    synth.add_argument("--out", default="-", help="output path, - for stdout")
    synth.set_defaults(handler=_cmd_synth)

    return parser


def _check_alpha(parser: _Parser, alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        parser.error("alpha must lie in (0, 1)")


def _check_range(parser: _Parser, args) -> None:
    if (args.date_from is None) != (args.date_to is None):
        parser.error("--from and --to must be given together")
    if args.date_from is not None and args.date_from > args.date_to:
        parser.error("--from must not be after --to")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _load_changes(args):
    series = parse_panel(_read_input(args.input))
    tenors = set(args.tenor) if args.tenor else None
    kept = [s for s in series if tenors is None or s.tenor in tenors]
    return [
        daily_changes(s, max_gap_days=args.max_gap_days, mode=args.change_mode)
        for s in kept
    ]


def _common_parameters(args) -> dict:
    return {
        "alpha": args.alpha,
        "change_mode": args.change_mode,
        "max_gap_days": args.max_gap_days,
        "tenor": sorted(args.tenor) if args.tenor else None,
    }


def _cmd_analyze(parser: _Parser, args) -> int:
    _check_alpha(parser, args.alpha)
    _check_range(parser, args)
    if args.period and args.date_from is not None:
        parser.error("--period cannot be combined with --from/--to")
    if args.date_from is not None:
        periods = [PeriodSpec("custom", args.date_from, args.date_to)]
    else:
        wanted = args.period or list(_PERIOD_LABELS)
        periods = [p for p in named_periods() if p.label in wanted]
    meta = {
        "tool": "benfordtrack",
        "version": __version__,
        "command": "analyze",
        "parameters": {
            **_common_parameters(args),
            "periods": {
                p.label: [p.start.isoformat(), p.end.isoformat()] for p in periods
            },
        },
    }
    try:
        changes = _load_changes(args)
        report = build_period_report(changes, periods, args.alpha, meta=meta)
        _write_output(args.out, emit(report, args.format))
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_track(parser: _Parser, args) -> int:
    _check_alpha(parser, args.alpha)
    _check_range(parser, args)
    try:
        spec = WindowSpec(args.window_len, args.step, args.min_fill)
    except ValueError as exc:
        parser.error(str(exc))
    meta = {
        "tool": "benfordtrack",
        "version": __version__,
        "command": "track",
        "parameters": {
            **_common_parameters(args),
            "window_length": spec.length,
            "step": spec.step,
            "min_fill": spec.min_fill,
            "from": args.date_from.isoformat() if args.date_from else None,
            "to": args.date_to.isoformat() if args.date_to else None,
        },
    }
    try:
        changes = _load_changes(args)
        if args.date_from is not None:
            changes = [s.slice(args.date_from, args.date_to) for s in changes]
        report = build_track_report(changes, spec, args.alpha, meta=meta)
        _write_output(args.out, emit(report, args.format))
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_synth(parser: _Parser, args) -> int:
    if args.n < 1:
        parser.error("--n must be at least 1")
    if (args.manip_fraction is None) != (args.manip_digit is None):
        parser.error("--manip-fraction and --manip-digit must be given together")
    manipulation = None
    if args.manip_fraction is not None:
        manipulation = (args.manip_fraction, args.manip_digit)
    if args.base_spread <= 0.0:
        parser.error("--base-spread must be positive")
    try:
        spec = SynthSpec(args.kind, args.n, args.seed, manipulation)
        series = synth_panel(
            spec,
            entity=args.entity,
            tenor=args.tenor,
            start=args.start_date,
            base_spread=args.base_spread,
        )
    except ValueError as exc:
        parser.error(str(exc))
    try:
        _write_output(args.out, serialize_panel([series]))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.handler(parser, args)


if __name__ == "__main__":
    raise SystemExit(main())
