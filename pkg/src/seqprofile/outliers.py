"""Box-plot summary, Tukey fences and the outlier set."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .quantiles import INTERPOLATE, quantile, quartiles
from .series import TimeSeries

__all__ = ["BoxStats", "box_stats", "irregularity_fraction", "quantile"]


@dataclass(frozen=True)
class BoxStats:
    q1: float
    q2: float
    q3: float
    iqr: float
    lower_fence: float
    upper_fence: float
    outlier_indices: tuple
    outlier_count: int
    n: int
    fence_k: float = 1.5

    def to_dict(self) -> dict:
        return {"q1": self.q1, "q2": self.q2, "q3": self.q3, "iqr": self.iqr,
                "lower_fence": self.lower_fence, "upper_fence": self.upper_fence,
                "outlier_indices": list(self.outlier_indices),
                "outlier_count": self.outlier_count, "n": self.n,
                "fence_k": self.fence_k}

    @classmethod
    def from_dict(cls, d: dict) -> "BoxStats":
        return cls(float(d["q1"]), float(d["q2"]), float(d["q3"]), float(d["iqr"]),
                   float(d["lower_fence"]), float(d["upper_fence"]),
                   tuple(int(i) for i in d["outlier_indices"]),
                   int(d["outlier_count"]), int(d["n"]), float(d["fence_k"]))


def box_stats(series: TimeSeries, fence_k: float = 1.5, quantile_rule: str = INTERPOLATE) -> BoxStats:
    """Quartiles, IQR and fences of ``series.values``, plus the outliers.

    A value is an outlier when it lies strictly below ``q1 - fence_k * iqr``
    or strictly above ``q3 + fence_k * iqr``, so a constant series has none.
    ``outlier_indices`` are positions into the series, ascending.
    """
    if not fence_k > 0:
        raise ParameterError(f"fence_k must be > 0, got {fence_k}")
    v = series.values
    q1, q2, q3 = quartiles(v, quantile_rule)
    iqr = q3 - q1
    lower = q1 - fence_k * iqr
    upper = q3 + fence_k * iqr
    idx = np.flatnonzero((v < lower) | (v > upper))
    return BoxStats(q1, q2, q3, iqr, lower, upper,
                    tuple(idx.tolist()), int(idx.size), int(v.size), float(fence_k))


def irregularity_fraction(stats: BoxStats) -> float:
    """Share of points outside the fences."""
    return stats.outlier_count / stats.n
