"""Delimited-text ingestion with a deterministic cleaning stage.

Date patterns use a small token language: ``YYYY`` (4-digit year),
``MM`` (month), ``DD`` (day); every other character is literal, so
``"YYYY-MM-DD"``, ``"DD/MM/YYYY"`` and ``"YYYYMMDD"`` all work.  A pattern
of ``None`` (or ``"INDEX"``) reads the timestamp column as plain integers.
"""
from __future__ import annotations

import csv
import datetime as _dt
import io
import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .errors import IngestError, UsageError
from .series import TimeSeries

DROP_ROW = "drop_row"
FAIL = "fail"
MISSING_POLICIES = (DROP_ROW, FAIL)
INDEX_FORMAT = "INDEX"

Column = Union[str, int]

_TOKENS = (("YYYY", "%Y"), ("MM", "%m"), ("DD", "%d"))


def strptime_pattern(date_format: str) -> str:
    """Translate a ``YYYY-MM-DD`` style pattern into a ``strptime`` format."""
    out = []
    i = 0
    while i < len(date_format):
        for token, directive in _TOKENS:
            if date_format.startswith(token, i):
                out.append(directive)
                i += len(token)
                break
        else:
            ch = date_format[i]
            out.append("%%" if ch == "%" else ch)
            i += 1
    fmt = "".join(out)
    if not all(d in fmt for _, d in _TOKENS):
        raise UsageError(f"date format {date_format!r} must contain YYYY, MM and DD")
    return fmt


@dataclass(frozen=True)
class IngestSpec:
    path: Union[str, os.PathLike]
    timestamp_column: Column = 0
    value_column: Column = 1
    date_format: Optional[str] = "YYYY-MM-DD"
    missing_policy: str = DROP_ROW
    delimiter: str = ","
    has_header: bool = True

    def __post_init__(self):
        if self.timestamp_column == self.value_column:
            raise UsageError("timestamp_column and value_column must differ")
        if len(self.delimiter) != 1 or not (self.delimiter.isprintable() or self.delimiter == "\t"):
            raise UsageError(f"delimiter must be one printable character, got {self.delimiter!r}")
        if self.missing_policy not in MISSING_POLICIES:
            raise UsageError(f"missing_policy must be one of {MISSING_POLICIES}")
        if not self.has_header and not (isinstance(self.timestamp_column, int)
                                        and isinstance(self.value_column, int)):
            raise UsageError("columns must be given by index when the file has no header")
        if self.date_format not in (None, INDEX_FORMAT):
            strptime_pattern(self.date_format)


@dataclass
class IngestReport:
    rows_read: int = 0
    rows_kept: int = 0
    rows_dropped: int = 0
    dropped_reasons: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"rows_read": self.rows_read, "rows_kept": self.rows_kept,
                "rows_dropped": self.rows_dropped,
                "dropped_reasons": dict(sorted(self.dropped_reasons.items()))}

    @classmethod
    def from_dict(cls, d: dict) -> "IngestReport":
        return cls(int(d["rows_read"]), int(d["rows_kept"]), int(d["rows_dropped"]),
                   {str(k): int(v) for k, v in d["dropped_reasons"].items()})


class _BadRow(Exception):
    def __init__(self, reason, detail):
        super().__init__(detail)
        self.reason = reason


def parse_value(text: str) -> float:
    s = text.strip()
    if not s:
        raise _BadRow("empty_value", "empty value")
    try:
        x = float(s.replace(",", ""))
    except ValueError:
        raise _BadRow("unparseable_value", f"cannot parse value {text!r}") from None
    if not math.isfinite(x):
        raise _BadRow("non_finite_value", f"non-finite value {text!r}")
    return x


def _timestamp_parser(date_format):
    if date_format in (None, INDEX_FORMAT):
        def parse(text):
            s = text.strip()
            if not s:
                raise _BadRow("empty_timestamp", "empty timestamp")
            try:
                return int(s)
            except ValueError:
                raise _BadRow("bad_timestamp", f"cannot parse index {text!r}") from None
        return parse

    fmt = strptime_pattern(date_format)

    def parse(text):
        s = text.strip()
        if not s:
            raise _BadRow("empty_timestamp", "empty timestamp")
        try:
            return _dt.datetime.strptime(s, fmt).date()
        except ValueError:
            raise _BadRow("bad_timestamp",
                          f"timestamp {text!r} does not match {date_format!r}") from None
    return parse


def _resolve(column: Column, header: Optional[list], path) -> int:
    if isinstance(column, int):
        if column < 0 or (header is not None and column >= len(header)):
            raise IngestError(f"{path}: column index {column} does not exist")
        return column
    if header is None:
        raise IngestError(f"{path}: column {column!r} given by name but file has no header")
    names = [h.strip() for h in header]
    if column not in names:
        raise IngestError(f"{path}: missing column {column!r} (header: {names})")
    return names.index(column)


def ingest_text(text: str, spec: IngestSpec, series_id: Optional[str] = None):
    """Parse already-loaded file contents; see :func:`ingest`."""
    path = str(spec.path)
    rows = csv.reader(io.StringIO(text, newline=""), delimiter=spec.delimiter)
    header = None
    first_line = 1
    if spec.has_header:
        header = next(rows, None)
        if header is None:
            raise IngestError(f"{path}: file is empty")
        first_line = 2
    ts_idx = _resolve(spec.timestamp_column, header, path)
    val_idx = _resolve(spec.value_column, header, path)
    parse_ts = _timestamp_parser(spec.date_format)

    reasons = Counter()
    kept = {}
    read = 0
    for offset, row in enumerate(rows):
        line = first_line + offset
        read += 1
        try:
            if not row or all(not c.strip() for c in row):
                raise _BadRow("blank_line", "blank line")
            if max(ts_idx, val_idx) >= len(row):
                raise _BadRow("missing_field", f"row has {len(row)} fields")
            ts = parse_ts(row[ts_idx])
            value = parse_value(row[val_idx])
        except _BadRow as bad:
            if spec.missing_policy == FAIL:
                raise IngestError(f"{path}: row {line}: {bad.reason}: {bad}") from None
            reasons[bad.reason] += 1
            continue
        if ts in kept:
            raise IngestError(f"{path}: row {line}: duplicate timestamp {row[ts_idx].strip()!r}")
        kept[ts] = value

    if not kept:
        raise IngestError(f"{path}: zero rows kept out of {read} read")
    order = sorted(kept)
    series = TimeSeries(
        id=series_id if series_id is not None else path,
        timestamps=tuple(order),
        values=[kept[t] for t in order],
        source=path,
    )
    report = IngestReport(read, len(order), read - len(order), dict(sorted(reasons.items())))
    return series, report


def ingest(spec: IngestSpec, series_id: Optional[str] = None):
    """Read ``spec.path`` into a cleaned :class:`TimeSeries`.

    Returns ``(series, report)``.  Rows with an empty, unparseable or
    non-finite value (or a bad timestamp) are dropped under ``drop_row`` and
    abort with the row number under ``fail``.  Rows are sorted by timestamp;
    duplicate timestamps are always an error.  The series id defaults to the
    path string.
    """
    path = Path(spec.path)
    try:
        raw = path.read_bytes()
    except FileNotFoundError:
        raise IngestError(f"{path}: file not found") from None
    except OSError as exc:
        raise IngestError(f"{path}: cannot read file: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise IngestError(f"{path}: not valid UTF-8 text (byte {exc.start})") from None
    return ingest_text(text, spec, series_id)


def _ingest_or_error(spec):
    try:
        return ingest(spec)
    except IngestError as exc:
        return exc


def ingest_bank(specs, max_workers: Optional[int] = None) -> list:
    """Ingest several files, keeping going past individual failures.

    Each element of the result is either a ``(series, report)`` tuple or the
    :class:`IngestError` raised for that spec, in the order of ``specs``.
    """
    specs = list(specs)
    if not specs:
        raise UsageError("ingest_bank needs at least one IngestSpec")
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(_ingest_or_error, specs))


def format_timestamp(t) -> str:
    return t.isoformat() if isinstance(t, _dt.date) else str(int(t))


def write_series_csv(series: TimeSeries, out) -> None:
    """Write ``timestamp,value`` rows with a header.

    Values use ``repr`` so re-ingesting reproduces them bit for bit.  Date
    timestamps are written as ``YYYY-MM-DD`` and integer ones as plain
    integers (re-ingest with ``date_format=None``).
    """
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["timestamp", "value"])
    for t, v in zip(series.timestamps, series.values.tolist()):
        writer.writerow([format_timestamp(t), repr(v)])


def series_to_csv(series: TimeSeries) -> str:
    buf = io.StringIO()
    write_series_csv(series, buf)
    return buf.getvalue()
