"""Sequential data container and descriptive statistics."""
from __future__ import annotations

import datetime as _dt
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import SeriesBoundsError, SeriesError
from .quantiles import quantile

Timestamp = Union[_dt.date, int]


def _check_timestamps(timestamps: tuple) -> None:
    kinds = {isinstance(t, _dt.date) for t in timestamps}
    if len(kinds) > 1:
        raise SeriesError("timestamps mix calendar dates and integer indices")
    for t in timestamps:
        if isinstance(t, bool) or not isinstance(t, (_dt.date, int, np.integer)):
            raise SeriesError(f"unsupported timestamp {t!r}")
    for k in range(1, len(timestamps)):
        if not timestamps[k - 1] < timestamps[k]:
            raise SeriesError(
                f"timestamps not strictly increasing at position {k}: "
                f"{timestamps[k - 1]!r} then {timestamps[k]!r}")


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Ordered (timestamp, value) observations with provenance.

    ``values`` is stored as a read-only float64 array.  Timestamps are
    either all ``datetime.date`` or all ``int``; gaps are allowed, only the
    order matters.
    """

    id: str
    timestamps: tuple
    values: np.ndarray
    source: str = ""

    def __post_init__(self):
        ts = tuple(int(t) if isinstance(t, np.integer) else t for t in self.timestamps)
        vals = np.array(self.values, dtype=float).ravel()
        if len(ts) == 0:
            raise SeriesError(f"series {self.id!r} is empty")
        if len(ts) != vals.size:
            raise SeriesError(
                f"series {self.id!r}: {len(ts)} timestamps but {vals.size} values")
        if not np.all(np.isfinite(vals)):
            bad = int(np.flatnonzero(~np.isfinite(vals))[0])
            raise SeriesError(f"series {self.id!r}: non-finite value at position {bad}")
        _check_timestamps(ts)
        vals.setflags(write=False)
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_values(cls, values: Sequence[float], id: str = "series", source: str = "") -> "TimeSeries":
        """Build a series indexed 0..n-1."""
        return cls(id, tuple(range(len(values))), values, source)

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (self.id == other.id and self.source == other.source
                and self.timestamps == other.timestamps
                and np.array_equal(self.values, other.values))

    __hash__ = None

    def slice(self, start: int, end: int) -> "TimeSeries":
        return slice_series(self, start, end)


@dataclass(frozen=True)
class DescriptiveStats:
    count: int
    min: float
    max: float
    mean: float
    median: float
    std_dev: float
    range: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "range", self.max - self.min)

    def to_dict(self) -> dict:
        return {"count": self.count, "min": self.min, "max": self.max,
                "mean": self.mean, "median": self.median,
                "std_dev": self.std_dev, "range": self.range}


def describe(series: TimeSeries) -> DescriptiveStats:
    """Count, extremes, mean, median and sample standard deviation."""
    v = series.values
    n = v.size
    mean = math.fsum(v) / n
    if n > 1:
        std = math.sqrt(math.fsum((v - mean) ** 2) / (n - 1))
    else:
        std = 0.0
    return DescriptiveStats(
        count=n,
        min=float(v.min()),
        max=float(v.max()),
        # fsum can land one ulp outside [min, max] for near-constant data
        mean=min(max(mean, float(v.min())), float(v.max())),
        median=quantile(v, 0.5),
        std_dev=std,
    )


def slice_series(series: TimeSeries, start: int, end: int) -> TimeSeries:
    """Sub-series over positions ``start <= i < end``; metadata is kept."""
    n = len(series)
    if not 0 <= start < n:
        raise SeriesBoundsError(f"start index {start} out of range for length {n}")
    if not start < end <= n:
        raise SeriesBoundsError(
            f"end index {end} out of range (must satisfy {start} < end <= {n})")
    return TimeSeries(series.id, series.timestamps[start:end],
                      series.values[start:end], series.source)
