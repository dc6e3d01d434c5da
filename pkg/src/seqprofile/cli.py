"""Command-line entry point.

Exit codes: 0 success, 1 data error (bad file, bad rows, corrupt bank,
undefined metric), 2 usage error.  Data goes to ``--output`` or stdout,
diagnostics to stderr.  ``SEQPROFILE_FENCE_K`` and ``SEQPROFILE_DELTA``
override the default fence multiplier and peak delta.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .bank import (RANK_KEYS, BankCatalog, BankEntry, load_catalog, profile,
                   rank_bank, save_catalog)
from .errors import IntegrityError, R2UndefinedError, SeqProfileError, UsageError
from .ingest import (DROP_ROW, MISSING_POLICIES, IngestSpec, ingest,
                     series_to_csv)
from .metrics import RANK_KEYS as EVAL_RANK_KEYS
from .metrics import PredictionPair, evaluate, rank_reports
from .outliers import box_stats
from .peaks import (PeakParams, default_candidates, default_delta, ippd_peaks,
                    tune_lookahead)
from .plot import emit_plot, marker_table
from .quantiles import QUANTILE_RULES
from .series import describe

ENV_FENCE_K = "SEQPROFILE_FENCE_K"
ENV_DELTA = "SEQPROFILE_DELTA"


def _positive_float(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (x > 0 and x != float("inf")):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text!r}")
    return x


def _positive_int(text):
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if x < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text!r}")
    return x


def _lookahead(text):
    return "auto" if text == "auto" else _positive_int(text)


def _column(text):
    return int(text) if text.isdigit() else text


def _delimiter(text):
    text = "\t" if text in ("\\t", "tab") else text
    if len(text) != 1:
        raise argparse.ArgumentTypeError(f"delimiter must be a single character, got {text!r}")
    return text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _env_float(name, fallback):
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return _positive_float(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"environment variable {name}: {exc}") from None


def _add_ingest_args(p, multiple=False):
    if multiple:
        p.add_argument("--input", action="append", required=True, type=Path,
                       help="delimited file (repeatable)")
    else:
        p.add_argument("--input", required=True, type=Path, help="delimited file")
    p.add_argument("--ts-col", type=_column, default=0, help="timestamp column name or index")
    p.add_argument("--value-col", type=_column, default=1, help="value column name or index")
    p.add_argument("--date-format", default="YYYY-MM-DD",
                   help='date pattern such as YYYY-MM-DD or DD/MM/YYYY; "INDEX" for integers')
    p.add_argument("--delimiter", type=_delimiter, default=",")
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--missing-policy", choices=MISSING_POLICIES, default=DROP_ROW)
    p.add_argument("--id", dest="series_id", action="append",
                   help="dataset id (default: the input path; repeatable with --input)")


def _add_peak_args(p):
    p.add_argument("--delta", type=_positive_float, default=None,
                   help=f"peak prominence (default: ${ENV_DELTA} or 5%% of the value range)")
    p.add_argument("--lookahead", type=_lookahead, default="auto",
                   help='integer window or "auto" to tune over the default candidates')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="seqprofile", description="Irregularity profiling of sequential datasets.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common_out(p, formats, default):
        p.add_argument("--output", "-o", type=Path, default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=formats, default=default)

    p = sub.add_parser("ingest", help="clean a delimited file and re-emit it")
    _add_ingest_args(p)
    common_out(p, ("csv", "json"), "csv")

    p = sub.add_parser("profile", help="outlier and peak-period profile of one or more files")
    _add_ingest_args(p, multiple=True)
    p.add_argument("--fence-k", type=_positive_float, default=None,
                   help=f"fence multiplier (default: ${ENV_FENCE_K} or 1.5)")
    p.add_argument("--quantile-rule", choices=QUANTILE_RULES, default="interpolate")
    _add_peak_args(p)
    p.add_argument("--bank", type=Path, default=None, help="add the profiles to this catalog")
    common_out(p, ("json", "csv"), "json")

    p = sub.add_parser("peaks", help="look-ahead peak detection")
    _add_ingest_args(p)
    _add_peak_args(p)
    p.add_argument("--svg", action="store_true", help="with --format plot, also write an SVG chart")
    common_out(p, ("json", "csv", "plot"), "json")

    p = sub.add_parser("rank", help="rank the datasets of a bank by irregularity")
    p.add_argument("--bank", type=Path, required=True)
    p.add_argument("--key", choices=RANK_KEYS, default="outlier_count")
    common_out(p, ("json", "csv"), "json")

    p = sub.add_parser("evaluate", help="score predictions against actuals")
    p.add_argument("--actuals", type=Path, required=True)
    p.add_argument("--predictions", type=Path, action="append", required=True,
                   help="prediction file (repeatable)")
    p.add_argument("--label", action="append", help="label per --predictions (default: path)")
    p.add_argument("--ts-col", type=_column, default=0)
    p.add_argument("--value-col", type=_column, default=1)
    p.add_argument("--date-format", default="YYYY-MM-DD")
    p.add_argument("--delimiter", type=_delimiter, default=",")
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--param-count", type=_positive_int, default=None)
    p.add_argument("--exec-time", type=_positive_float, default=None, help="seconds")
    p.add_argument("--rank-key", choices=EVAL_RANK_KEYS, default="rmse")
    common_out(p, ("json", "csv"), "json")

    p = sub.add_parser("report", help="list every entry of a bank")
    p.add_argument("--bank", type=Path, required=True)
    common_out(p, ("json", "csv"), "json")
    return parser


def _spec(args, path) -> IngestSpec:
    date_format = None if args.date_format.upper() == "INDEX" else args.date_format
    return IngestSpec(path, args.ts_col, args.value_col, date_format,
                      getattr(args, "missing_policy", "fail"), args.delimiter,
                      not args.no_header)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _write(args, text: str) -> None:
    if args.output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        args.output.write_text(text, encoding="utf-8")


def _validate(args) -> None:
    if args.command in ("ingest", "profile", "peaks", "evaluate"):
        specs = [args.input] if args.command in ("ingest", "peaks") else (
            args.input if args.command == "profile" else [args.actuals])
        for path in specs:
            _spec(args, path)
        ids = getattr(args, "series_id", None)
        if ids is not None and len(ids) != len(specs):
            raise UsageError(f"--id given {len(ids)} times for {len(specs)} --input files")
    if args.command == "evaluate" and args.label is not None and len(args.label) != len(args.predictions):
        raise UsageError(f"--label given {len(args.label)} times for {len(args.predictions)} --predictions")
    if args.command == "peaks" and args.format == "plot" and args.output is None:
        raise UsageError("--format plot needs --output (the marker table path)")
    if getattr(args, "fence_k", 0) is None:
        args.fence_k = _env_float(ENV_FENCE_K, 1.5)
    if hasattr(args, "delta") and args.delta is None:
        args.delta = _env_float(ENV_DELTA, None)


def _load(args, path, series_id=None):
    return ingest(_spec(args, path), series_id)


def _peaks(args, series):
    delta = args.delta if args.delta is not None else default_delta(series)
    if args.lookahead == "auto":
        return tune_lookahead(series, delta, default_candidates(len(series)))
    return ippd_peaks(series, PeakParams(delta, args.lookahead))


def _cmd_ingest(args):
    ids = args.series_id or [None]
    series, report = _load(args, args.input, ids[0])
    if args.format == "csv":
        return series_to_csv(series)
    return _json({"id": series.id, "source": series.source, "report": report.to_dict(),
                  "describe": describe(series).to_dict()})


def _profile_one(job):
    args, path, series_id = job
    series, report = _load(args, path, series_id)
    peaks = None
    delta = args.delta
    if args.lookahead != "auto":
        if delta is None:
            delta = default_delta(series)
        peaks = PeakParams(delta, args.lookahead)
    prof = profile(series, args.fence_k, peaks, args.quantile_rule, delta)
    return BankEntry(str(path), report, prof)


def _cmd_profile(args):
    ids = args.series_id or [None] * len(args.input)
    jobs = [(args, path, sid) for path, sid in zip(args.input, ids)]
    catalog = None
    if args.bank is not None and args.bank.exists():
        catalog = load_catalog(args.bank)
    with ThreadPoolExecutor() as pool:
        entries = list(pool.map(_profile_one, jobs))
    if args.bank is not None:
        catalog = catalog or BankCatalog()
        for e in entries:
            catalog.add(e)
        save_catalog(catalog, args.bank)
    profiles = [e.profile for e in entries]
    if args.format == "csv":
        return _csv(["dataset_id", "n", "outlier_count", "outlier_fraction", "peak_count",
                     "period_cv", "lookahead", "params_digest"],
                    [[p.dataset_id, p.n, p.outlier_count, repr(p.outlier_fraction), p.peak_count,
                      repr(p.period_cv), p.ippd.peaks.params.lookahead, p.params_digest]
                     for p in profiles])
    if len(profiles) == 1:
        return _json(profiles[0].to_dict())
    return _json([p.to_dict() for p in profiles])


def _cmd_peaks(args):
    ids = args.series_id or [None]
    series, _ = _load(args, args.input, ids[0])
    result = _peaks(args, series)
    if args.format == "plot":
        written = emit_plot(result, series, args.output, svg=args.svg)
        for path in written:
            print(f"wrote {path}", file=sys.stderr)
        return None
    if args.format == "csv":
        return marker_table(result, series)
    return _json(result.to_dict())


def _cmd_rank(args):
    order = rank_bank(load_catalog(args.bank), args.key)
    if args.format == "csv":
        return _csv(["rank", "dataset_id"], [[i + 1, d] for i, d in enumerate(order)])
    return _json({"key": args.key, "ranking": order})


def _cmd_evaluate(args):
    actuals, _ = _load(args, args.actuals)
    labels = args.label or [str(p) for p in args.predictions]
    reports = []
    undefined = []
    for label, path in zip(labels, args.predictions):
        preds, _ = _load(args, path)
        if preds.timestamps != actuals.timestamps:
            raise SeqProfileError(f"{path}: timestamps do not match {args.actuals}")
        pair = PredictionPair(actuals.values, preds.values)
        try:
            report = evaluate(pair, args.param_count, args.exec_time)
        except R2UndefinedError as exc:
            report = exc.report
            undefined.append(f"{path}: {exc}")
        reports.append((label, report))
    if args.format == "csv":
        fields = ["mae", "mse", "rmse", "r2", "n", "param_count", "exec_time_seconds", "efficiency"]
        text = _csv(["label"] + fields,
                    [[label] + ["" if getattr(r, f) is None else repr(getattr(r, f)) for f in fields]
                     for label, r in reports])
    elif len(reports) == 1:
        text = _json(reports[0][1].to_dict())
    else:
        text = _json({"reports": {label: r.to_dict() for label, r in reports},
                      "ranking": rank_reports(reports, args.rank_key),
                      "rank_key": args.rank_key})
    if undefined:
        _write(args, text)
        raise R2UndefinedError("; ".join(undefined))
    return text


def _cmd_report(args):
    catalog = load_catalog(args.bank)
    ids = sorted(catalog.entries)
    if args.format == "csv":
        return _csv(["dataset_id", "source", "n", "rows_dropped", "outlier_count",
                     "outlier_fraction", "peak_count", "period_cv", "profiled_at"],
                    [[i, catalog.entries[i].source, catalog.entries[i].profile.n,
                      catalog.entries[i].ingest.rows_dropped,
                      catalog.entries[i].profile.outlier_count,
                      repr(catalog.entries[i].profile.outlier_fraction),
                      catalog.entries[i].profile.peak_count,
                      repr(catalog.entries[i].profile.period_cv),
                      catalog.entries[i].profile.profiled_at] for i in ids])
    return _json({"version": catalog.version, "count": len(ids),
                  "entries": [catalog.entries[i].to_dict() for i in ids]})


_COMMANDS = {"ingest": _cmd_ingest, "profile": _cmd_profile, "peaks": _cmd_peaks,
             "rank": _cmd_rank, "evaluate": _cmd_evaluate, "report": _cmd_report}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _validate(args)
    except UsageError as exc:
        print(f"seqprofile {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    try:
        text = _COMMANDS[args.command](args)
        if text is not None:
            _write(args, text)
    except UsageError as exc:
        print(f"seqprofile {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except (SeqProfileError, IntegrityError) as exc:
        print(f"seqprofile {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"seqprofile {args.command}: error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
