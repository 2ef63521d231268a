"""Distortion (PRD) and compression-ratio metrics."""
from __future__ import annotations

import math

import numpy as np

DEFAULT_LOG_BASE = 10.0


class MetricError(ValueError):
    pass


def _samples(x) -> np.ndarray:
    return np.asarray(getattr(x, "samples", x), dtype=np.float64)


def _norm(v: np.ndarray) -> float:
    # fsum: exactly rounded sum of squares
    return math.sqrt(math.fsum((v * v).tolist()))


def prd(x, xr) -> float:
    """Percentage root-mean-square difference, 100 * ||x - xr|| / ||x||."""
    a, b = _samples(x), _samples(xr)
    if a.shape != b.shape:
        raise MetricError(f"length mismatch: {a.size} vs {b.size}")
    ref = _norm(a)
    if ref == 0.0:
        raise MetricError("original signal has zero energy; PRD undefined")
    return _norm(a - b) / ref * 100.0


def prd_from_coefficients(coeffs) -> float:
    """PRD of dropping the masked-out coefficients, via Parseval."""
    ref = _norm(coeffs.flat)
    if ref == 0.0:
        raise MetricError("zero-energy coefficients; PRD undefined")
    return _norm(np.where(coeffs.keep_mask, 0.0, coeffs.flat)) / ref * 100.0


def compression_ratio(m: int, ns: int) -> float:
    """(1 - M/Ns) * 100 for M retained out of Ns coefficients."""
    if ns < 1 or m < 1 or m > ns:
        raise MetricError(f"need 1 <= m <= ns, got m={m}, ns={ns}")
    return (1.0 - m / ns) * 100.0


def log_distortion(ds: float, base: float = DEFAULT_LOG_BASE) -> float:
    if not ds > 0:
        raise MetricError(f"log distortion needs a positive PRD, got {ds}")
    if base == 10.0:
        return math.log10(ds)
    if base == math.e:
        return math.log(ds)
    return math.log(ds) / math.log(base)
