"""Prediction scoring: MAE, MSE, RMSE, R^2, complexity and efficiency."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ParameterError, R2UndefinedError, UsageError


@dataclass(frozen=True, eq=False)
class PredictionPair:
    actuals: np.ndarray
    predictions: np.ndarray

    def __post_init__(self):
        y = np.array(self.actuals, dtype=float).ravel()
        yhat = np.array(self.predictions, dtype=float).ravel()
        if y.size == 0:
            raise ParameterError("prediction pair is empty")
        if y.size != yhat.size:
            raise ParameterError(f"{y.size} actuals but {yhat.size} predictions")
        if not (np.all(np.isfinite(y)) and np.all(np.isfinite(yhat))):
            raise ParameterError("actuals and predictions must be finite")
        y.setflags(write=False)
        yhat.setflags(write=False)
        object.__setattr__(self, "actuals", y)
        object.__setattr__(self, "predictions", yhat)

    def __len__(self):
        return self.actuals.size


@dataclass(frozen=True)
class EvalReport:
    mae: float
    mse: float
    rmse: float
    r2: Optional[float]
    n: int
    param_count: Optional[int] = None
    exec_time_seconds: Optional[float] = None
    efficiency: Optional[float] = None

    def to_dict(self) -> dict:
        return {"mae": self.mae, "mse": self.mse, "rmse": self.rmse, "r2": self.r2,
                "n": self.n, "param_count": self.param_count,
                "exec_time_seconds": self.exec_time_seconds,
                "efficiency": self.efficiency}


def evaluate(pair: PredictionPair, param_count: Optional[int] = None,
             exec_time_seconds: Optional[float] = None) -> EvalReport:
    """Score ``pair.predictions`` against ``pair.actuals``.

    ``efficiency`` is ``exec_time_seconds / param_count`` (lower is better)
    and is only filled in when both are given.  With constant actuals R^2 is
    undefined: :class:`R2UndefinedError` is raised and carries the report
    (``r2=None``) with the other metrics.
    """
    if param_count is not None and (isinstance(param_count, bool) or int(param_count) != param_count
                                    or param_count <= 0):
        raise ParameterError(f"param_count must be a positive integer, got {param_count!r}")
    if exec_time_seconds is not None and not (math.isfinite(exec_time_seconds) and exec_time_seconds > 0):
        raise ParameterError(f"exec_time_seconds must be positive, got {exec_time_seconds!r}")

    y, yhat = pair.actuals, pair.predictions
    n = y.size
    err = y - yhat
    mae = math.fsum(np.abs(err)) / n
    ss_res = math.fsum(err * err)
    mse = ss_res / n
    rmse = math.sqrt(mse)
    ybar = math.fsum(y) / n
    ss_tot = math.fsum((y - ybar) ** 2)

    efficiency = None
    if param_count is not None and exec_time_seconds is not None:
        efficiency = exec_time_seconds / param_count
    report = EvalReport(
        mae=mae, mse=mse, rmse=rmse, r2=None, n=n,
        param_count=None if param_count is None else int(param_count),
        exec_time_seconds=None if exec_time_seconds is None else float(exec_time_seconds),
        efficiency=efficiency,
    )
    if ss_tot == 0.0:
        raise R2UndefinedError("r2 is undefined: actuals have zero variance", report)
    return EvalReport(mae, mse, rmse, 1.0 - ss_res / ss_tot, n, report.param_count,
                      report.exec_time_seconds, efficiency)


RANK_KEYS = ("rmse", "mae")


def rank_reports(reports, key: str = "rmse") -> list:
    """Order labels best first.

    ``key="rmse"`` sorts by rmse, then mae, then r2 (descending), then label;
    ``key="mae"`` swaps the first two.  A missing r2 ranks last among ties.
    """
    reports = list(reports)
    if not reports:
        raise UsageError("rank_reports needs at least one report")
    if key not in RANK_KEYS:
        raise UsageError(f"rank key must be one of {RANK_KEYS}, got {key!r}")
    sizes = {r.n for _, r in reports}
    if len(sizes) > 1:
        raise UsageError(f"reports cover different sample counts: {sorted(sizes)}")

    def sort_key(item):
        label, r = item
        r2 = -math.inf if r.r2 is None else r.r2
        first, second = (r.rmse, r.mae) if key == "rmse" else (r.mae, r.rmse)
        return (first, second, -r2, label)

    return [label for label, _ in sorted(reports, key=sort_key)]
