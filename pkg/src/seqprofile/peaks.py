"""Billauer extrema detection and its look-ahead (IPPD) variant.

Both detectors share one scan.  It starts undecided, tracking a running
maximum and minimum, and commits to a direction once the signal has
reversed by ``delta`` from either of them; from then on it alternates
between confirming a maximum and a minimum.  Starting undecided (rather
than hunting for a maximum first) keeps the scan symmetric under negation.
The look-ahead variant filters the scan's extrema by how far forward they
dominate the signal.  The first sample is never reported as an extremum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ParameterError, UsageError
from .series import TimeSeries

DEFAULT_LOOKAHEADS = (1, 2, 5, 10, 20, 50, 100, 200)
DEFAULT_DELTA_FRACTION = 0.05


@dataclass(frozen=True)
class PeakParams:
    delta: float
    lookahead: int = 1

    def __post_init__(self):
        if not (isinstance(self.delta, (int, float)) and math.isfinite(self.delta) and self.delta > 0):
            raise ParameterError(f"delta must be a positive finite number, got {self.delta!r}")
        if isinstance(self.lookahead, bool) or not isinstance(self.lookahead, int) or self.lookahead < 1:
            raise ParameterError(f"lookahead must be an integer >= 1, got {self.lookahead!r}")

    def to_dict(self) -> dict:
        return {"delta": float(self.delta), "lookahead": self.lookahead}


@dataclass(frozen=True)
class PeakSet:
    maxima: tuple
    minima: tuple
    params: PeakParams
    periods: tuple
    period_mean: float
    period_std: float
    period_cv: float

    def to_dict(self) -> dict:
        return {"maxima": [[i, v] for i, v in self.maxima],
                "minima": [[i, v] for i, v in self.minima],
                "params": self.params.to_dict(),
                "periods": list(self.periods),
                "period_mean": self.period_mean,
                "period_std": self.period_std,
                "period_cv": self.period_cv}

    @classmethod
    def from_dict(cls, d: dict) -> "PeakSet":
        return cls(tuple((int(i), float(v)) for i, v in d["maxima"]),
                   tuple((int(i), float(v)) for i, v in d["minima"]),
                   PeakParams(float(d["params"]["delta"]), int(d["params"]["lookahead"])),
                   tuple(int(p) for p in d["periods"]),
                   float(d["period_mean"]), float(d["period_std"]), float(d["period_cv"]))


@dataclass(frozen=True)
class IppdResult:
    peaks: PeakSet
    peak_count: int
    tuned: bool = False
    lookahead_sweep: Optional[tuple] = None

    def to_dict(self) -> dict:
        sweep = None if self.lookahead_sweep is None else [list(p) for p in self.lookahead_sweep]
        return {"peaks": self.peaks.to_dict(), "peak_count": self.peak_count,
                "tuned": self.tuned, "lookahead_sweep": sweep}

    @classmethod
    def from_dict(cls, d: dict) -> "IppdResult":
        sweep = d.get("lookahead_sweep")
        if sweep is not None:
            sweep = tuple((int(a), int(b)) for a, b in sweep)
        return cls(PeakSet.from_dict(d["peaks"]), int(d["peak_count"]), bool(d["tuned"]), sweep)


def _scan(vals: list, delta: float, inclusive: bool) -> list:
    """Single pass returning ``(position, value, confirmed_at, kind)`` with
    kind ``+1`` for a maximum and ``-1`` for a minimum.  Position 0 is
    included here; callers drop it."""
    if inclusive:
        def fell(v, ref):
            return v <= ref - delta

        def rose(v, ref):
            return v >= ref + delta
    else:
        def fell(v, ref):
            return v < ref - delta

        def rose(v, ref):
            return v > ref + delta

    found = []
    mx = mn = vals[0]
    mxpos = mnpos = 0
    mode = 0  # 0 undecided, 1 seeking a maximum, -1 seeking a minimum
    for i in range(1, len(vals)):
        v = vals[i]
        if mode >= 0 and v > mx:
            mx, mxpos = v, i
        if mode <= 0 and v < mn:
            mn, mnpos = v, i
        # while undecided at most one of the two tests can pass
        if mode >= 0 and fell(v, mx):
            found.append((mxpos, mx, i, 1))
            mode = -1
            mn, mnpos = v, i
        elif mode <= 0 and rose(v, mn):
            found.append((mnpos, mn, i, -1))
            mode = 1
            mx, mxpos = v, i
    return found


def _dominates(vals: list, pos: int, value: float, confirmed_at: int, kind: int, lookahead: int) -> bool:
    stop = confirmed_at + lookahead
    if stop > len(vals) - 1:
        return False
    window = vals[pos + 1:stop + 1]
    return max(window) <= value if kind > 0 else min(window) >= value


def _collapse(extrema: list) -> list:
    out = []
    for e in extrema:
        if out and out[-1][2] == e[2]:
            prev = out[-1]
            if (e[2] > 0 and e[1] > prev[1]) or (e[2] < 0 and e[1] < prev[1]):
                out[-1] = e
        else:
            out.append(e)
    return out


def _split(extrema):
    maxima = [(p, v) for p, v, k in extrema if k > 0]
    minima = [(p, v) for p, v, k in extrema if k < 0]
    return maxima, minima


def _values(series) -> list:
    if isinstance(series, TimeSeries):
        return series.values.tolist()
    return [float(x) for x in series]


def _build(maxima, minima, params) -> PeakSet:
    periods = tuple(b[0] - a[0] for a, b in zip(maxima, maxima[1:]))
    mean, std, cv = _period_moments(periods)
    return PeakSet(tuple(maxima), tuple(minima), params, periods, mean, std, cv)


def _period_moments(periods):
    if not periods:
        return 0.0, 0.0, 0.0
    m = len(periods)
    mean = math.fsum(periods) / m
    std = math.sqrt(math.fsum((p - mean) ** 2 for p in periods) / (m - 1)) if m > 1 else 0.0
    return mean, std, std / mean


def period_stats(peaks: PeakSet) -> tuple[float, float, float]:
    """Mean, sample std and coefficient of variation of the gaps between maxima.

    Returns ``(0, 0, 0)`` with fewer than two maxima; a single gap has std 0.
    """
    idx = [i for i, _ in peaks.maxima]
    return _period_moments([b - a for a, b in zip(idx, idx[1:])])


def billauer_peaks(series, delta: float) -> PeakSet:
    """Classic Billauer scan: a maximum is confirmed once the signal falls
    more than ``delta`` below it, a minimum once it rises more than
    ``delta`` above it."""
    params = PeakParams(delta, 1)
    vals = _values(series)
    if not vals:
        raise ParameterError("series must contain at least one value")
    found = _scan(vals, params.delta, inclusive=False)
    maxima, minima = _split([(p, v, k) for p, v, _, k in found if p > 0])
    return _build(maxima, minima, params)


def ippd_peaks(series, params: PeakParams) -> IppdResult:
    """Look-ahead extrema detection.

    Runs the scan with "at least ``delta``" reversals, then keeps a maximum
    at ``p`` confirmed at sample ``i`` only if nothing in ``(p, i + lookahead]``
    exceeds it; that window must lie inside the series.  Minima are
    symmetric.  Dropping an extremum can leave two minima (or maxima)
    adjacent; the lower (higher) of the two is kept, the earlier on ties.
    Requires ``len(series) > lookahead``.
    """
    vals = _values(series)
    if len(vals) <= params.lookahead:
        raise ParameterError(
            f"series of length {len(vals)} is too short for lookahead {params.lookahead}")
    L = params.lookahead
    kept = [(p, v, k) for p, v, i, k in _scan(vals, params.delta, inclusive=True)
            if p > 0 and _dominates(vals, p, v, i, k, L)]
    maxima, minima = _split(_collapse(kept))
    peaks = _build(maxima, minima, params)
    return IppdResult(peaks, len(maxima) + len(minima), tuned=False)


def tune_lookahead(series, delta: float, candidates: Sequence[int]) -> IppdResult:
    """Run :func:`ippd_peaks` for every candidate and keep the one with the
    most extrema, preferring the smallest lookahead on ties."""
    candidates = list(candidates)
    if not candidates:
        raise UsageError("tune_lookahead needs at least one candidate lookahead")
    n = len(series)
    for c in candidates:
        if isinstance(c, bool) or not isinstance(c, int) or not 1 <= c < n:
            raise ParameterError(f"candidate lookahead {c!r} must be an integer in [1, {n - 1}]")
    results = {c: ippd_peaks(series, PeakParams(delta, c)) for c in sorted(set(candidates))}
    best = min(results, key=lambda c: (-results[c].peak_count, c))
    sweep = tuple((c, results[c].peak_count) for c in candidates)
    chosen = results[best]
    return IppdResult(chosen.peaks, chosen.peak_count, tuned=True, lookahead_sweep=sweep)


def default_delta(series) -> float:
    """5% of the value range; 1.0 for a constant series, where any positive
    delta gives the same (empty) result."""
    vals = _values(series)
    span = max(vals) - min(vals)
    return DEFAULT_DELTA_FRACTION * span if span > 0 else 1.0


def default_candidates(n: int) -> list[int]:
    """Default lookahead sweep restricted to values usable on ``n`` samples."""
    return [c for c in DEFAULT_LOOKAHEADS if c < n]
