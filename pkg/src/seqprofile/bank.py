"""Irregularity profiles, the dataset bank catalog and its ranking."""
from __future__ import annotations

import datetime as _dt
import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import IntegrityError, SeqProfileError, UsageError
from .ingest import IngestReport
from .outliers import BoxStats, box_stats
from .peaks import (IppdResult, PeakParams, default_candidates, default_delta,
                    ippd_peaks, tune_lookahead)
from .quantiles import INTERPOLATE
from .series import TimeSeries

CATALOG_VERSION = "bank-v1"
RANK_KEYS = ("outlier_count", "outlier_fraction", "peak_count", "period_cv")


@dataclass(frozen=True)
class IrregularityProfile:
    dataset_id: str
    n: int
    outlier_count: int
    outlier_fraction: float
    peak_count: int
    period_cv: float
    box: BoxStats
    ippd: IppdResult
    profiled_at: str
    params_digest: str

    def to_dict(self) -> dict:
        return {"dataset_id": self.dataset_id, "n": self.n,
                "outlier_count": self.outlier_count,
                "outlier_fraction": self.outlier_fraction,
                "peak_count": self.peak_count, "period_cv": self.period_cv,
                "box": self.box.to_dict(), "ippd": self.ippd.to_dict(),
                "profiled_at": self.profiled_at, "params_digest": self.params_digest}

    @classmethod
    def from_dict(cls, d: dict) -> "IrregularityProfile":
        return cls(str(d["dataset_id"]), int(d["n"]), int(d["outlier_count"]),
                   float(d["outlier_fraction"]), int(d["peak_count"]), float(d["period_cv"]),
                   BoxStats.from_dict(d["box"]), IppdResult.from_dict(d["ippd"]),
                   str(d["profiled_at"]), str(d["params_digest"]))


def _canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False).encode()


def params_digest(params: dict) -> str:
    return hashlib.sha256(_canonical(params)).hexdigest()


def _now() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        moment = _dt.datetime.fromtimestamp(int(epoch), _dt.timezone.utc)
    else:
        moment = _dt.datetime.now(_dt.timezone.utc)
    return moment.replace(microsecond=0).isoformat()


def profile(series: TimeSeries, fence_k: float = 1.5,
            peaks: Union[PeakParams, Sequence[int], None] = None,
            quantile_rule: str = INTERPOLATE, delta: Optional[float] = None,
            profiled_at: Optional[str] = None) -> IrregularityProfile:
    """Outlier and peak-period evidence for one dataset.

    ``peaks`` is either fixed :class:`PeakParams` or a list of candidate
    lookaheads to tune over (``None`` uses the default candidates).  With
    candidates, ``delta`` defaults to 5% of the value range.  Errors from the
    underlying modules are re-raised with the dataset id prefixed.
    ``profiled_at`` defaults to the current UTC time, or to
    ``SOURCE_DATE_EPOCH`` when that is set.
    """
    try:
        box = box_stats(series, fence_k, quantile_rule)
        if isinstance(peaks, PeakParams):
            ippd = ippd_peaks(series, peaks)
            peak_spec = {"mode": "fixed", **peaks.to_dict()}
        else:
            d = default_delta(series) if delta is None else float(delta)
            cands = default_candidates(len(series)) if peaks is None else list(peaks)
            ippd = tune_lookahead(series, d, cands)
            peak_spec = {"mode": "tuned", "delta": d, "candidates": cands}
    except SeqProfileError as exc:
        raise type(exc)(f"[{series.id}] {exc}") from exc
    digest = params_digest({"fence_k": float(fence_k), "quantile_rule": quantile_rule,
                            "peaks": peak_spec})
    return IrregularityProfile(
        dataset_id=series.id,
        n=len(series),
        outlier_count=box.outlier_count,
        outlier_fraction=box.outlier_count / box.n,
        peak_count=ippd.peak_count,
        period_cv=ippd.peaks.period_cv,
        box=box,
        ippd=ippd,
        profiled_at=profiled_at if profiled_at is not None else _now(),
        params_digest=digest,
    )


@dataclass(frozen=True)
class BankEntry:
    source: str
    ingest: IngestReport
    profile: IrregularityProfile

    def to_dict(self) -> dict:
        return {"source": self.source, "ingest": self.ingest.to_dict(),
                "profile": self.profile.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "BankEntry":
        return cls(str(d["source"]), IngestReport.from_dict(d["ingest"]),
                   IrregularityProfile.from_dict(d["profile"]))


@dataclass
class BankCatalog:
    entries: dict = field(default_factory=dict)
    version: str = CATALOG_VERSION

    def add(self, entry: BankEntry, replace: bool = True) -> None:
        key = entry.profile.dataset_id
        if key in self.entries and not replace:
            raise UsageError(f"dataset {key!r} is already in the bank")
        self.entries[key] = entry

    def __len__(self):
        return len(self.entries)

    def entries_dict(self) -> dict:
        return {k: self.entries[k].to_dict() for k in sorted(self.entries)}


def catalog_digest(entries: dict) -> str:
    """SHA-256 over the canonical JSON of the entries mapping."""
    return hashlib.sha256(_canonical(entries)).hexdigest()


def dumps_catalog(catalog: BankCatalog) -> str:
    entries = catalog.entries_dict()
    doc = {"version": catalog.version, "digest": catalog_digest(entries), "entries": entries}
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def loads_catalog(text: str) -> BankCatalog:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IntegrityError(f"catalog is not valid JSON (truncated?): {exc}") from None
    if not isinstance(doc, dict) or not {"version", "digest", "entries"} <= doc.keys():
        raise IntegrityError("catalog is missing version, digest or entries")
    if doc["version"] != CATALOG_VERSION:
        raise IntegrityError(f"unsupported catalog version {doc['version']!r}")
    if catalog_digest(doc["entries"]) != doc["digest"]:
        raise IntegrityError("catalog digest mismatch")
    try:
        entries = {str(k): BankEntry.from_dict(v) for k, v in doc["entries"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise IntegrityError(f"malformed catalog entry: {exc}") from None
    for k, e in entries.items():
        if e.profile.dataset_id != k:
            raise IntegrityError(f"entry key {k!r} does not match dataset_id {e.profile.dataset_id!r}")
    return BankCatalog(entries, doc["version"])


def save_catalog(catalog: BankCatalog, path) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(dumps_catalog(catalog), encoding="utf-8")
    tmp.replace(path)


def load_catalog(path) -> BankCatalog:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise IntegrityError(f"{path}: catalog file not found") from None
    except UnicodeDecodeError:
        raise IntegrityError(f"{path}: catalog is not UTF-8 text") from None
    return loads_catalog(text)


def rank_bank(catalog: BankCatalog, key: str = "outlier_count") -> list:
    """Dataset ids, most irregular first.

    Sorted by ``key`` descending, then outlier fraction descending, then id.
    The head is the primary candidate and the runner-up the validation set.
    """
    if key not in RANK_KEYS:
        raise UsageError(f"rank key must be one of {RANK_KEYS}, got {key!r}")
    if not catalog.entries:
        raise UsageError("cannot rank an empty bank")
    profiles = [e.profile for e in catalog.entries.values()]
    profiles.sort(key=lambda p: (-getattr(p, key), -p.outlier_fraction, p.dataset_id))
    return [p.dataset_id for p in profiles]
