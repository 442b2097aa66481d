"""Transmission and compression metrics.

ACR is the ratio of summed original sizes to summed compressed sizes
(not a mean of per-file ratios). BPER counts differing bit positions
between two equal-length byte buffers. Timing wraps a monotonic clock.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


@dataclass(frozen=True)
class SizePair:
    original: int
    compressed: int

    def __post_init__(self) -> None:
        if self.original < 1 or self.compressed < 1:
            raise ValueError("sizes must be >= 1")

    @property
    def ratio(self) -> float:
        return self.original / self.compressed


@dataclass(frozen=True)
class TimingSample:
    operation: str  # "compress" | "decompress" | "transfer"
    elapsed: float
    payload: int | None = None


def acr(pairs: Iterable) -> float:
    """Sum of original sizes over sum of compressed sizes."""
    total_orig = 0
    total_comp = 0
    for p in pairs:
        if not isinstance(p, SizePair):
            p = SizePair(*p)
        total_orig += p.original
        total_comp += p.compressed
    if total_comp == 0:
        raise ValueError("empty pair list")
    return total_orig / total_comp


def bper(original: bytes, decoded: bytes) -> float:
    """Fraction of differing bits between two equal-length buffers."""
    if len(original) != len(decoded):
        raise ValueError(f"length mismatch: {len(original)} vs {len(decoded)}")
    if len(original) == 0:
        return 0.0
    a = np.frombuffer(original, dtype=np.uint8)
    b = np.frombuffer(decoded, dtype=np.uint8)
    wrong = int(_POPCOUNT[np.bitwise_xor(a, b)].sum(dtype=np.int64))
    return wrong / (8 * len(original))


def percent_decrease(t_before: float, t_after: float) -> float:
    if t_before <= 0:
        raise ValueError("t_before must be positive")
    return (t_before - t_after) / t_before * 100.0


def throughput(size: int, elapsed: float) -> float:
    if elapsed <= 0:
        raise ValueError("elapsed must be positive")
    return size / elapsed


def time_operation(
    thunk: Callable[[], object],
    operation: str = "compress",
    payload: int | None = None,
) -> tuple[object, TimingSample]:
    """Run a thunk under a monotonic clock; returns (result, sample).

    When no payload size is given and the result has a length, that
    length is recorded.
    """
    start = time.perf_counter()
    result = thunk()
    elapsed = time.perf_counter() - start
    if payload is None:
        try:
            payload = len(result)  # type: ignore[arg-type]
        except TypeError:
            payload = None
    return result, TimingSample(operation, elapsed, payload)


def psnr(original: np.ndarray, decoded: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB; identical inputs give +inf."""
    a = np.asarray(original, dtype=np.float64)
    b = np.asarray(decoded, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)
