"""Command-line entry point: ``passnet <subcommand> ...``.

Exit codes: 0 ok, 1 validation/parse/IO failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import metrics as m
from .netgraph import build_graph, collapse_zones, export_dot, to_json
from .passlog import (
    DEFAULT_SCHEME,
    MatchLog,
    ParseError,
    Roster,
    ZoneScheme,
    format_log,
    parse_log,
    parse_roster,
    validate,
)
from .synth import SCENARIOS, parse_config, scenario, simulate
from .timeline import PeriodGroup, assign, group_events, window_ending_at

ZONE_SCHEME_ENV = "PASSNET_ZONE_SCHEME"
PERIODS = {"regulation": [PeriodGroup.REGULATION], "extratime": [PeriodGroup.EXTRA_TIME]}
PERIODS["all"] = PERIODS["regulation"] + PERIODS["extratime"]


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _load_scheme(args) -> ZoneScheme:
    path = args.zone_scheme or os.environ.get(ZONE_SCHEME_ENV)
    return ZoneScheme.parse(_read(path)) if path else DEFAULT_SCHEME


def _load_roster(args) -> Roster | None:
    return parse_roster(_read(args.roster)) if args.roster else None


def _load_log(args, mode: str | None = None) -> tuple[MatchLog, ZoneScheme]:
    scheme = _load_scheme(args)
    mode = mode or ("lenient" if getattr(args, "lenient", False) else "strict")
    log = parse_log(_read(args.log), scheme, mode, roster=_load_roster(args))
    for issue in log.issues:
        _warn(f"{'skipped' if issue.fatal else 'kept'}: {issue}")
    return log, scheme


def _fmt(x) -> str:
    return repr(float(x)) if isinstance(x, float) else str(x)


# --- validate ---------------------------------------------------------------


def cmd_validate(args) -> int:
    log, _ = _load_log(args, mode="lenient")
    errors = [str(i) for i in log.issues if i.fatal]
    warnings = validate(log, check_zone_coverage=args.check_zones)
    for e in errors:
        print(f"error: {e}")
    for w in warnings:
        print(f"warning: {w}")
    print(f"{len(errors)} errors, {len(warnings)} warnings")
    if errors or (args.strict and warnings):
        return 1
    return 0


# --- analyze ----------------------------------------------------------------


def _series_rows(s: m.MetricSeries) -> tuple[list[str], list[list]]:
    if s.metric == "chains":
        header = ["window_end", "value", "sem", "n"]
        rows = [[p.window_end, p.value, p.sem, p.n] for p in s.points]
    else:
        header = ["window_end", "value"]
        rows = [[p.window_end, p.value] for p in s.points]
    return header, rows


def series_csv(s: m.MetricSeries) -> str:
    header, rows = _series_rows(s)
    lines = [",".join(header)] + [",".join(_fmt(x) for x in r) for r in rows]
    return "\n".join(lines) + "\n"


def series_json(s: m.MetricSeries) -> dict:
    header, rows = _series_rows(s)
    return {
        "metric": s.metric,
        "period": s.group.value,
        "points": [dict(zip(header, r)) for r in rows],
    }


def _metric_options(args, log: MatchLog) -> m.MetricOptions:
    node_space = None
    if args.density_full_space:
        squad = len(log.roster) if log.roster is not None else len(log.players)
        node_space = squad * 9
    return m.MetricOptions(
        gap_threshold=args.gap_threshold,
        clustering_include_deg1=args.clustering_include_deg1,
        clustering_global=args.clustering_global,
        density_node_space=node_space,
    )


def cmd_analyze(args) -> int:
    log, _ = _load_log(args)
    opts = _metric_options(args, log)
    metric_names = list(m.METRICS) if args.metric == "all" else [args.metric]
    all_series = []
    for group in PERIODS[args.period]:
        if not group_events(log.events, group):
            _warn(f"no events in period {group.value}")
        for name in metric_names:
            s = m.series(log, group, name, args.window_length, args.window_step, opts)
            if not s.points and group_events(log.events, group):
                _warn(f"period {group.value} shorter than one window")
            all_series.append(s)

    if args.out_dir is not None:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for s in all_series:
            stem = out / f"{s.metric}_{s.group.value}"
            if args.format == "csv":
                _write(series_csv(s), f"{stem}.csv")
            else:
                _write(json.dumps(series_json(s), indent=2, ensure_ascii=False) + "\n", f"{stem}.json")
        return 0

    if args.format == "json":
        doc = {
            "window_length": args.window_length,
            "window_step": args.window_step,
            "series": [series_json(s) for s in all_series],
        }
        _write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", None)
        return 0
    chunks = []
    for s in all_series:
        text = series_csv(s)
        if len(all_series) > 1:
            text = f"# period={s.group.value} metric={s.metric}\n" + text
        chunks.append(text)
    _write("".join(chunks), None)
    return 0


# --- centrality & export ----------------------------------------------------


def _scoped_graph(log: MatchLog, scope: str, length: int, step: int):
    kind, sep, value = scope.partition(":")
    if not sep:
        raise UsageError(f"scope must look like window:M, half:H or period:G, got {scope!r}")
    if kind == "window":
        try:
            end = int(value)
        except ValueError:
            raise UsageError(f"bad window minute {value!r}") from None
        w = window_ending_at(log, end, length, step)
        if w is None:
            raise LookupError(f"no {length}-minute window ends at minute {end}")
        return build_graph(assign(log.events, w), w)
    if kind == "half":
        try:
            half = int(value)
        except ValueError:
            raise UsageError(f"bad half {value!r}") from None
        if half not in (1, 2, 3, 4):
            raise UsageError(f"half must be 1..4, got {half}")
        events = [e for e in log.events if e.half == half]
        if not events:
            raise LookupError(f"no events in half {half}")
        return build_graph(events)
    if kind == "period":
        if value not in ("regulation", "extratime"):
            raise UsageError(f"period must be regulation or extratime, got {value!r}")
        events = group_events(log.events, PeriodGroup(value))
        if not events:
            raise LookupError(f"no events in period {value}")
        return build_graph(events)
    raise UsageError(f"unknown scope kind {kind!r}")


CENTRALITY_COLUMNS = ["player", "zone", "in_deg", "out_deg", "in_str", "out_str"]


def cmd_centrality(args) -> int:
    log, _ = _load_log(args)
    g = _scoped_graph(log, args.scope, args.window_length, args.window_step)
    table = m.centrality(g, scope=args.scope)
    header = list(CENTRALITY_COLUMNS)
    if log.roster is not None:
        header.append("name")
    records = []
    for r in table.rows:
        rec = [r.player, r.zone, r.in_degree, r.out_degree, r.in_strength, r.out_strength]
        if log.roster is not None:
            rec.append(log.roster.name(r.player) or "")
        records.append(rec)
    if args.format == "json":
        doc = {"scope": args.scope, "rows": [dict(zip(header, r)) for r in records]}
        _write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", args.out)
        return 0
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(records)
    _write(buf.getvalue(), args.out)
    return 0


def cmd_export_graph(args) -> int:
    log, scheme = _load_log(args)
    g = _scoped_graph(log, f"window:{args.minute}", args.window_length, args.window_step)
    if args.collapse_zones:
        g = collapse_zones(g)
    if args.format == "json":
        text = json.dumps(to_json(g), indent=2) + "\n"
    else:
        text = export_dot(g, log.roster, scheme)
    _write(text, args.out)
    return 0


# --- simulate ---------------------------------------------------------------


def cmd_simulate(args) -> int:
    if args.config:
        cfg = parse_config(_read(args.config))
        if args.scenario:
            raise UsageError("give either --scenario or --config, not both")
    elif args.scenario:
        cfg = scenario(args.scenario)
    else:
        raise UsageError("one of --scenario or --config is required")
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    _write(format_log(simulate(cfg)), args.out)
    return 0


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="passnet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("log", help="pass log file")
    inputs.add_argument("--roster", help="CSV roster (number,name,position)")
    inputs.add_argument(
        "--zone-scheme", help=f"zone scheme file (default: ${ZONE_SCHEME_ENV} or built-in)"
    )

    win = argparse.ArgumentParser(add_help=False)
    win.add_argument("--window-length", type=int, default=15)
    win.add_argument("--window-step", type=int, default=1)
    win.add_argument("--lenient", action="store_true", help="skip malformed lines instead of failing")

    p = sub.add_parser("validate", parents=[inputs], help="parse and check a pass log")
    p.add_argument("--strict", action="store_true", help="treat warnings as failures")
    p.add_argument("--check-zones", action="store_true", help="warn about unvisited zones")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[inputs, win], help="windowed metric series")
    p.add_argument("--metric", choices=[*m.METRICS, "all"], default="all")
    p.add_argument("--period", choices=list(PERIODS), default="all")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out-dir", help="write one file per metric and period here")
    p.add_argument("--gap-threshold", type=int, default=1, help="max minutes between chained passes")
    p.add_argument("--clustering-include-deg1", action="store_true")
    p.add_argument("--clustering-global", action="store_true", help="use transitivity")
    p.add_argument("--density-full-space", action="store_true", help="divide by |squad| x 9 nodes")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("centrality", parents=[inputs, win], help="zone-based degree/strength table")
    p.add_argument("--scope", required=True, help="window:M (window ending at M), half:H or period:G")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("export-graph", parents=[inputs, win], help="dump one window graph")
    p.add_argument("--minute", type=int, required=True, help="end minute of the window")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--collapse-zones", action="store_true", help="player-level graph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_graph)

    p = sub.add_parser("simulate", help="generate a synthetic pass log")
    p.add_argument("--scenario", choices=sorted(SCENARIOS))
    p.add_argument("--config", help="key=value simulator config file")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "window_length", 1) < 1 or getattr(args, "window_step", 1) < 1:
        parser.error("window length and step must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"passnet: error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, LookupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
