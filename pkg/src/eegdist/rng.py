"""SplitMix64, the single documented generator behind every seeded draw.

Stream i of a seed s is ``mix(s + (i + 1) * 0x9E3779B97F4A7C15) mod 2**64``
with the standard SplitMix64 finaliser ``mix``; this counter form is what the
channel kernels evaluate per bit, so any implementation can replay a stream.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64(seed: int, index: int) -> int:
    """The index-th (0-based) output of a SplitMix64 generator seeded with `seed`."""
    return mix64(seed + (index + 1) * GOLDEN)


def mix_seeds(*parts: int) -> int:
    """Fold integers into one 64-bit seed; order-sensitive."""
    acc = 0
    for p in parts:
        acc = mix64(acc ^ mix64((int(p) & MASK64) + GOLDEN))
    return acc


def uniform_int(seed: int, index: int, bound: int) -> int:
    """Draw in [0, bound) from the index-th output (modulo reduction)."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    return splitmix64(seed, index) % bound


def probability_threshold(p: float) -> int:
    """Integer threshold t with P(draw < t) = p for a uniform 64-bit draw."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    return min(int(p * 2.0**64), MASK64)
