"""Sample quantile rules used for the box-plot summary and the median."""
from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError, UsageError

INTERPOLATE = "interpolate"
TUKEY_HINGE = "tukey_hinge"
QUANTILE_RULES = (INTERPOLATE, TUKEY_HINGE)


def _as_sorted(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise UsageError("quantile of an empty sample is undefined")
    if not np.all(np.isfinite(arr)):
        raise ParameterError("quantile input contains non-finite values")
    return np.sort(arr, kind="stable")


def _interpolate_sorted(v: np.ndarray, p: float) -> float:
    h = (v.size - 1) * p
    lo = math.floor(h)
    frac = h - lo
    if frac == 0.0:
        return float(v[lo])
    return float(v[lo] + frac * (v[lo + 1] - v[lo]))


def _median_sorted(v: np.ndarray) -> float:
    return _interpolate_sorted(v, 0.5)


def _hinge_sorted(v: np.ndarray, p: float) -> float:
    n = v.size
    if p == 0.0:
        return float(v[0])
    if p == 1.0:
        return float(v[-1])
    if p == 0.5:
        return _median_sorted(v)
    half = (n + 1) // 2  # lower/upper halves include the median when n is odd
    if p == 0.25:
        return _median_sorted(v[:half])
    if p == 0.75:
        return _median_sorted(v[n - half:])
    raise ParameterError(
        f"tukey_hinge rule only defines p in {{0, 0.25, 0.5, 0.75, 1}}, got {p}")


def quantile(values, p: float, rule: str = INTERPOLATE) -> float:
    """Return the ``p``-quantile of ``values``.

    The default rule interpolates linearly between order statistics at
    position ``h = (n - 1) * p`` of the sorted sample.  ``"tukey_hinge"``
    returns Tukey's hinges (medians of the lower and upper halves, the
    median included in both halves when ``n`` is odd) and only accepts the
    quartile levels.
    """
    if not (0.0 <= p <= 1.0):
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    if rule not in QUANTILE_RULES:
        raise ParameterError(f"unknown quantile rule {rule!r}")
    v = _as_sorted(values)
    if rule == TUKEY_HINGE:
        return _hinge_sorted(v, p)
    return _interpolate_sorted(v, p)


def quartiles(values, rule: str = INTERPOLATE) -> tuple[float, float, float]:
    """Q1, Q2, Q3 with a single sort."""
    if rule not in QUANTILE_RULES:
        raise ParameterError(f"unknown quantile rule {rule!r}")
    v = _as_sorted(values)
    pick = _hinge_sorted if rule == TUKEY_HINGE else _interpolate_sorted
    return pick(v, 0.25), pick(v, 0.5), pick(v, 0.75)
