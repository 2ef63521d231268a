"""Keep-M-largest thresholding, uniform quantisation and the EEGC bitstream.

Bitstream layout, little-endian::

    magic "EEGC" | version u8 | flags u8 | ns u32 | levels u8 | filter_length u8
    | qbits u8 | reserved u8 | target_cr f64 | lo f64 | hi f64
    | ceil(ns/8) significance bytes (coefficient i -> bit i%8 of byte i//8)
    | M codes of qbits each, packed LSB-first, zero-padded to a byte
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from . import kernels
from .metrics import compression_ratio
from .signal_io import DEFAULT_SAMPLING_RATE, Signal
from .wavelet import CoefficientSet, WaveletSpec, dwt, idwt_array

MAGIC = b"EEGC"
VERSION = 1
HEADER = struct.Struct("<4sBBIBBBBddd")
HEADER_SIZE = HEADER.size
DEFAULT_QBITS = 12
MAX_QBITS = 16


class CodecError(ValueError):
    pass


class CorruptBlockError(CodecError):
    """Significance map and payload disagree with the header."""


def keep_count(ns: int, cr: float) -> int:
    """M = round((1 - cr/100) * ns), half away from zero, never below 1."""
    if not 0.0 <= cr < 100.0:
        raise CodecError(f"compression ratio must be in [0, 100), got {cr}")
    m = math.floor(ns * (100.0 - cr) / 100.0 + 0.5)
    return max(1, min(ns, m))


def threshold_to_ratio(coeffs: CoefficientSet, cr: float) -> CoefficientSet:
    """Keep the M largest-magnitude coefficients; ties go to the smaller index."""
    m = keep_count(coeffs.ns, cr)
    order = np.argsort(-np.abs(coeffs.flat), kind="stable")
    mask = np.zeros(coeffs.ns, dtype=bool)
    mask[order[:m]] = True
    return coeffs.with_mask(mask)


@dataclass(frozen=True)
class QuantizerSpec:
    bits: int
    lo: float
    hi: float

    def __post_init__(self):
        if not 1 <= int(self.bits) <= MAX_QBITS:
            raise CodecError(f"quantizer bits must be in 1..{MAX_QBITS}, got {self.bits}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
            raise CodecError(f"quantizer range needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def levels(self) -> int:
        return 1 << self.bits

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / self.levels


def quantize(values, spec: QuantizerSpec) -> np.ndarray:
    """Mid-rise uniform quantiser; out-of-range values are clamped."""
    v = np.asarray(values, dtype=np.float64)
    codes = np.floor((v - spec.lo) / spec.step)
    return np.clip(codes, 0, spec.levels - 1).astype(np.uint32)


def dequantize(codes, spec: QuantizerSpec) -> np.ndarray:
    c = np.asarray(codes, dtype=np.float64)
    return spec.lo + (c + 0.5) * spec.step


def quantizer_for(values: np.ndarray, bits: int) -> QuantizerSpec:
    lo, hi = float(np.min(values)), float(np.max(values))
    if not lo < hi:
        # single distinct value: centre a tiny range on it
        pad = max(abs(lo), 1.0) * 2.0**-30
        lo, hi = lo - pad, hi + pad
    return QuantizerSpec(bits, lo, hi)


@dataclass(frozen=True)
class EncodedBlock:
    ns: int
    levels: int
    filter_length: int
    qbits: int
    target_cr: float
    lo: float
    hi: float
    significance: bytes
    payload: bytes
    flags: int = 0

    @property
    def m(self) -> int:
        """Number of retained coefficients implied by the header."""
        return keep_count(self.ns, self.target_cr)

    @property
    def compression_ratio(self) -> float:
        return compression_ratio(self.m, self.ns)

    @property
    def payload_bit_length(self) -> int:
        return self.m * self.qbits

    @property
    def quantizer(self) -> QuantizerSpec:
        return QuantizerSpec(self.qbits, self.lo, self.hi)

    @property
    def wavelet(self) -> WaveletSpec:
        return WaveletSpec(self.filter_length, self.levels)

    def header_bytes(self) -> bytes:
        return HEADER.pack(
            MAGIC, VERSION, self.flags, self.ns, self.levels, self.filter_length,
            self.qbits, 0, self.target_cr, self.lo, self.hi,
        )

    def to_bytes(self) -> bytes:
        return self.header_bytes() + self.significance + self.payload

    @property
    def bit_length(self) -> int:
        return 8 * (HEADER_SIZE + len(self.significance) + len(self.payload))

    def significance_mask(self) -> np.ndarray:
        raw = np.frombuffer(self.significance, dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.ns].astype(bool)

    @classmethod
    def from_bytes(cls, data: bytes) -> EncodedBlock:
        """Parse a serialised block; the payload is taken as-is (may be short)."""
        data = bytes(data)
        if len(data) < HEADER_SIZE:
            raise CodecError(f"block too short for header: {len(data)} bytes")
        magic, version, flags, ns, levels, flen, qbits, _, cr, lo, hi = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise CodecError(f"bad magic {magic!r}")
        if version != VERSION:
            raise CodecError(f"unsupported bitstream version {version}")
        sig_len = (ns + 7) // 8
        if len(data) < HEADER_SIZE + sig_len:
            raise CodecError("block truncated inside the significance map")
        sig = data[HEADER_SIZE : HEADER_SIZE + sig_len]
        payload = data[HEADER_SIZE + sig_len :]
        return cls(ns, levels, flen, qbits, cr, lo, hi, sig, payload, flags)


def encode_coefficients(coeffs: CoefficientSet, spec: WaveletSpec, cr: float,
                        qbits: int = DEFAULT_QBITS) -> EncodedBlock:
    kept = threshold_to_ratio(coeffs, cr)
    values = kept.flat[kept.keep_mask]
    qspec = quantizer_for(values, qbits)
    codes = quantize(values, qspec)
    sig = np.packbits(kept.keep_mask.astype(np.uint8), bitorder="little").tobytes()
    payload = kernels.pack_codes(codes, qbits)
    return EncodedBlock(
        ns=coeffs.ns, levels=spec.levels, filter_length=spec.filter_length,
        qbits=qbits, target_cr=float(cr), lo=qspec.lo, hi=qspec.hi,
        significance=sig, payload=payload,
    )


def encode(signal, spec: WaveletSpec, cr: float, qbits: int = DEFAULT_QBITS) -> EncodedBlock:
    """DWT, keep-M-largest at the target ratio, quantise, serialise."""
    QuantizerSpec(qbits, 0.0, 1.0)  # validates qbits before any work
    return encode_coefficients(dwt(signal, spec), spec, cr, qbits)


def decode_coefficients(block: EncodedBlock, lenient: bool = False) -> CoefficientSet:
    """Rebuild the masked coefficient set.

    In strict mode any mismatch between significance map, payload size and
    header raises :class:`CorruptBlockError`. In lenient mode payload values
    are assigned to significant positions in order; surplus values are
    dropped and missing ones are zero.
    """
    spec = block.wavelet
    spec.check_length(block.ns)
    m = block.m
    mask = block.significance_mask()
    count = int(mask.sum())
    expected_bytes = (m * block.qbits + 7) // 8
    if not lenient:
        padding = np.unpackbits(np.frombuffer(block.significance, np.uint8), bitorder="little")[block.ns :]
        if count != m:
            raise CorruptBlockError(f"significance map marks {count} coefficients, header implies {m}")
        if len(block.payload) != expected_bytes:
            raise CorruptBlockError(
                f"payload has {len(block.payload)} bytes, expected {expected_bytes}"
            )
        if padding.any():
            raise CorruptBlockError("non-zero padding bits after the significance map")
    available = min(m, (len(block.payload) * 8) // block.qbits)
    codes = kernels.unpack_codes(block.payload, available, block.qbits)
    values = dequantize(codes, block.quantizer)
    n_assign = min(count, values.size)
    flat = np.zeros(block.ns)
    positions = np.flatnonzero(mask)
    flat[positions[:n_assign]] = values[:n_assign]
    return CoefficientSet(flat, spec.levels, block.ns, mask)


def decode(block: EncodedBlock, lenient: bool = False,
           sampling_rate: float = DEFAULT_SAMPLING_RATE) -> Signal:
    coeffs = decode_coefficients(block, lenient=lenient)
    x = idwt_array(coeffs, block.wavelet)
    return Signal(x, sampling_rate, validate=False)
