"""Orthonormal periodic multi-level DWT with Daubechies filters."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from ._filters import DAUBECHIES
from .signal_io import Signal

SUPPORTED_FILTER_LENGTHS = tuple(sorted(DAUBECHIES))
DEFAULT_LEVELS = 5


class WaveletError(ValueError):
    pass


def daubechies_filter(filter_length: int) -> np.ndarray:
    """Low-pass scaling filter of the Daubechies wavelet with `filter_length` taps."""
    if filter_length not in DAUBECHIES:
        raise WaveletError(
            f"unsupported filter length {filter_length}; "
            f"expected an even value in 2..20"
        )
    return np.array(DAUBECHIES[filter_length], dtype=np.float64)


def highpass_filter(lowpass: np.ndarray) -> np.ndarray:
    """Quadrature mirror: g[n] = (-1)^n h[F-1-n]."""
    signs = np.where(np.arange(lowpass.size) % 2 == 0, 1.0, -1.0)
    return signs * lowpass[::-1]


@dataclass(frozen=True)
class WaveletSpec:
    filter_length: int = 8
    levels: int = DEFAULT_LEVELS
    boundary: str = "periodic"

    def __post_init__(self):
        if self.filter_length not in DAUBECHIES:
            raise WaveletError(
                f"unsupported filter length {self.filter_length}; "
                "expected an even value in 2..20"
            )
        if int(self.levels) < 1:
            raise WaveletError(f"levels must be >= 1, got {self.levels}")
        if self.boundary != "periodic":
            raise WaveletError(f"unsupported boundary mode {self.boundary!r}")

    def check_length(self, ns: int) -> None:
        if ns % (1 << self.levels) != 0:
            raise WaveletError(
                f"signal length {ns} is not divisible by 2**{self.levels}"
            )

    def filters(self) -> tuple[np.ndarray, np.ndarray]:
        h = daubechies_filter(self.filter_length)
        return h, highpass_filter(h)


@dataclass
class CoefficientSet:
    """Multi-level coefficients in flat pyramid order.

    ``flat`` holds ``[a_J, d_J, d_{J-1}, ..., d_1]``; ``keep_mask`` marks the
    retained coefficients (M of them) out of ``ns``.
    """

    flat: np.ndarray
    levels: int
    ns: int
    keep_mask: np.ndarray = field(default=None)

    def __post_init__(self):
        self.flat = np.asarray(self.flat, dtype=np.float64)
        if self.flat.shape != (self.ns,):
            raise WaveletError(
                f"coefficient count {self.flat.size} does not match ns={self.ns}"
            )
        if self.keep_mask is None:
            self.keep_mask = np.ones(self.ns, dtype=bool)
        else:
            self.keep_mask = np.asarray(self.keep_mask, dtype=bool)
            if self.keep_mask.shape != (self.ns,):
                raise WaveletError("keep_mask length does not match ns")

    @property
    def m(self) -> int:
        return int(self.keep_mask.sum())

    @property
    def approximation(self) -> np.ndarray:
        return self.flat[: self.ns >> self.levels]

    @property
    def details(self) -> list[np.ndarray]:
        """Detail bands ordered from level J (coarsest) down to level 1."""
        out = []
        start = self.ns >> self.levels
        for level in range(self.levels, 0, -1):
            size = self.ns >> level
            out.append(self.flat[start : start + size])
            start += size
        return out

    def masked(self) -> np.ndarray:
        return np.where(self.keep_mask, self.flat, 0.0)

    def with_mask(self, mask) -> CoefficientSet:
        return CoefficientSet(self.flat.copy(), self.levels, self.ns, np.array(mask, dtype=bool))


def _as_array(signal) -> np.ndarray:
    if isinstance(signal, Signal):
        return signal.samples
    return np.ascontiguousarray(signal, dtype=np.float64)


def dwt(signal, spec: WaveletSpec) -> CoefficientSet:
    """Forward J-level periodic DWT; accepts a Signal or a 1-D array."""
    x = _as_array(signal)
    ns = x.shape[0]
    spec.check_length(ns)
    h, g = spec.filters()
    approx = np.ascontiguousarray(x)
    details = []
    for _ in range(spec.levels):
        approx, detail = kernels.analysis_step(approx, h, g)
        details.append(detail)
    flat = np.concatenate([approx] + details[::-1])
    return CoefficientSet(flat, spec.levels, ns)


def idwt_array(coeffs: CoefficientSet, spec: WaveletSpec) -> np.ndarray:
    if coeffs.levels != spec.levels:
        raise WaveletError(
            f"coefficient set has {coeffs.levels} levels, spec has {spec.levels}"
        )
    spec.check_length(coeffs.ns)
    h, g = spec.filters()
    flat = coeffs.masked()
    size = coeffs.ns >> spec.levels
    approx = np.ascontiguousarray(flat[:size])
    start = size
    for _ in range(spec.levels):
        detail = np.ascontiguousarray(flat[start : start + size])
        approx = kernels.synthesis_step(approx, detail, h, g)
        start += size
        size *= 2
    return approx


def idwt(coeffs: CoefficientSet, spec: WaveletSpec, sampling_rate: float | None = None) -> Signal:
    """Inverse transform of the masked coefficients."""
    from .signal_io import DEFAULT_SAMPLING_RATE

    x = idwt_array(coeffs, spec)
    return Signal(x, sampling_rate or DEFAULT_SAMPLING_RATE, validate=False)
