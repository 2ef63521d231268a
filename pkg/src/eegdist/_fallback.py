"""Pure numpy versions of the compiled kernels in ``_core.pyx``.

Loop order and operand order mirror the Cython code so that both backends
produce bit-identical floats and bytes.
"""
import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def mix64(z):
    """SplitMix64 finaliser applied elementwise to a uint64 array."""
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def analysis_step(x, h, g):
    n = x.shape[0]
    half = n // 2
    base = 2 * np.arange(half)
    a = np.zeros(half)
    d = np.zeros(half)
    for t in range(h.shape[0]):
        xs = x[(base + t) % n]
        a = a + h[t] * xs
        d = d + g[t] * xs
    return a, d


def synthesis_step(a, d, h, g):
    half = a.shape[0]
    n = 2 * half
    base = 2 * np.arange(half)
    x = np.zeros(n)
    for t in range(h.shape[0]):
        idx = (base + t) % n
        x[idx] = x[idx] + (a * h[t] + d * g[t])
    return x


def pack_codes(codes, width):
    codes = np.asarray(codes, dtype=np.uint32)
    if codes.size == 0:
        return b""
    shifts = np.arange(width, dtype=np.uint32)
    bits = ((codes[:, None] >> shifts) & np.uint32(1)).astype(np.uint8).ravel()
    return np.packbits(bits, bitorder="little").tobytes()


def unpack_codes(buf, count, width):
    raw = np.frombuffer(bytes(buf), dtype=np.uint8)
    if count * width > raw.size * 8:
        raise ValueError("buffer too short for requested codes")
    if count == 0:
        return np.zeros(0, dtype=np.uint32)
    bits = np.unpackbits(raw, bitorder="little")[: count * width]
    bits = bits.reshape(count, width).astype(np.uint32)
    weights = np.uint32(1) << np.arange(width, dtype=np.uint32)
    return (bits * weights).sum(axis=1, dtype=np.uint32)


def bsc_flip(buf, seed, threshold):
    raw = np.frombuffer(bytes(buf), dtype=np.uint8)
    if threshold == 0 or raw.size == 0:
        return raw.tobytes(), 0
    nbits = raw.size * 8
    counters = np.arange(1, nbits + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        draws = mix64(np.uint64(seed) + counters * GOLDEN)
    flip = draws < np.uint64(threshold)
    mask = np.packbits(flip.astype(np.uint8), bitorder="little")
    return (raw ^ mask).tobytes(), int(flip.sum())
