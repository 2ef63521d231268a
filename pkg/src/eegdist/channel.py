"""Binary symmetric channel applied to the body of an encoded block."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import kernels
from .codec import EncodedBlock
from .rng import probability_threshold


class Quality(str, enum.Enum):
    IDEAL = "ideal"
    VERY_GOOD = "verygood"
    GOOD = "good"
    BAD = "bad"
    VERY_BAD = "verybad"
    CUSTOM = "custom"


DEFAULT_BER = {
    Quality.IDEAL: 0.0,
    Quality.VERY_GOOD: 1e-5,
    Quality.GOOD: 1e-4,
    Quality.BAD: 1e-3,
    Quality.VERY_BAD: 5e-3,
}

# channel ids used in records: 0 is the ideal link, 1..4 the graded models
CHANNEL_IDS = {
    Quality.IDEAL: 0,
    Quality.VERY_GOOD: 1,
    Quality.GOOD: 2,
    Quality.BAD: 3,
    Quality.VERY_BAD: 4,
}


class ChannelError(ValueError):
    pass


@dataclass(frozen=True)
class ChannelModel:
    quality: Quality
    ber: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.ber <= 0.5:
            raise ChannelError(f"bit-error rate must be in [0, 0.5], got {self.ber}")
        if self.quality == Quality.IDEAL and self.ber != 0.0:
            raise ChannelError("an ideal channel has ber = 0")

    @classmethod
    def named(cls, quality: str | Quality, seed: int = 0, ber: float | None = None) -> ChannelModel:
        q = Quality(quality)
        if ber is None:
            if q not in DEFAULT_BER:
                raise ChannelError("a custom channel needs an explicit ber")
            ber = DEFAULT_BER[q]
        return cls(q, float(ber), seed)

    def with_seed(self, seed: int) -> ChannelModel:
        return ChannelModel(self.quality, self.ber, seed)


def flip_bits(data: bytes, ber: float, seed: int) -> tuple[bytes, int]:
    """Flip each bit independently with probability `ber`; returns (bytes, flips)."""
    return kernels.bsc_flip(data, seed & ((1 << 64) - 1), probability_threshold(ber))


def transmit_counted(block: EncodedBlock, channel: ChannelModel) -> tuple[EncodedBlock, int]:
    if channel.quality == Quality.IDEAL or channel.ber == 0.0:
        return block, 0
    body, flips = flip_bits(block.significance + block.payload, channel.ber, channel.seed)
    n_sig = len(block.significance)
    corrupted = EncodedBlock(
        block.ns, block.levels, block.filter_length, block.qbits, block.target_cr,
        block.lo, block.hi, body[:n_sig], body[n_sig:], block.flags,
    )
    return corrupted, flips


def transmit(block: EncodedBlock, channel: ChannelModel) -> EncodedBlock:
    """Pass the significance map and payload through a BSC; the header is untouched."""
    return transmit_counted(block, channel)[0]
