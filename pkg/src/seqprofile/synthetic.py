"""Deterministic synthetic series used by the tests and scripts."""
from __future__ import annotations

import numpy as np

from .series import TimeSeries


def sine(n: int = 500, period: float = 50.0, amplitude: float = 1.0, noise: float = 0.0,
         seed: int = 0, id: str = "sine") -> TimeSeries:
    """``amplitude * sin(2*pi*k/period)`` plus optional uniform noise in ``[-noise, noise]``."""
    k = np.arange(n)
    v = amplitude * np.sin(2 * np.pi * k / period)
    if noise:
        v = v + np.random.default_rng(seed).uniform(-noise, noise, n)
    return TimeSeries.from_values(v, id=id, source="synthetic")


def triangle(id: str = "triangle") -> TimeSeries:
    return TimeSeries.from_values([0, 1, 2, 3, 2, 1, 0, 1, 2, 3, 2, 1, 0], id=id, source="synthetic")


def spiked_sine(n: int = 2000, spikes: int = 5, magnitude: float = 10.0, period: float = 100.0,
                seed: int = 0, id: str = "spiked"):
    """Unit sine with ``spikes`` points shifted by ``+-magnitude``.

    Returns ``(series, injected_indices)``; indices are distinct and sorted.
    """
    rng = np.random.default_rng(seed)
    v = np.sin(2 * np.pi * np.arange(n) / period)
    idx = np.sort(rng.choice(n, size=spikes, replace=False))
    v[idx] += magnitude * rng.choice([-1.0, 1.0], size=spikes)
    return TimeSeries.from_values(v, id=id, source="synthetic"), [int(i) for i in idx]
