"""Experiment configuration: INI-style file with ``[sweep]``, ``[channel_study]``
and ``[channel.<name>]`` sections.

Grid values are comma lists or ``start:stop:step`` ranges (stop inclusive)::

    [sweep]
    cr_grid = 40:85:5
    filter_lengths = 2:20:2
    block_lengths = 1024, 2048, 4096
    trials = 1
    master_seed = 0
    qbits = 12
    levels = 5
    link_rate_bps = 250000
    channels = ideal

    [channel.good]
    ber = 1e-4
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace

from .channel import CHANNEL_IDS, DEFAULT_BER, ChannelModel, Quality
from .codec import DEFAULT_QBITS, keep_count
from .metrics import DEFAULT_LOG_BASE
from .wavelet import DEFAULT_LEVELS, SUPPORTED_FILTER_LENGTHS


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class NamedChannel:
    name: str
    channel_id: int
    model: ChannelModel


def default_channels() -> dict[str, NamedChannel]:
    out = {}
    for q, cid in CHANNEL_IDS.items():
        out[q.value] = NamedChannel(q.value, cid, ChannelModel(q, DEFAULT_BER[q]))
    return out


STUDY_CHANNELS = ("verygood", "good", "bad", "verybad")


@dataclass(frozen=True)
class SweepConfig:
    cr_grid: tuple[float, ...] = tuple(float(c) for c in range(40, 90, 5))
    filter_lengths: tuple[int, ...] = SUPPORTED_FILTER_LENGTHS
    block_lengths: tuple[int, ...] = (1024, 2048, 4096)
    trials: int = 1
    master_seed: int = 0
    qbits: int = DEFAULT_QBITS
    levels: int = DEFAULT_LEVELS
    link_rate_bps: float = 250_000.0
    log_base: float = DEFAULT_LOG_BASE
    channels: dict = field(default_factory=default_channels)
    sweep_channels: tuple[str, ...] = ("ideal",)
    study_cr: float = 60.0
    study_filter_length: int = 8
    study_block_length: int = 4096
    study_trials: int = 300
    study_channels: tuple[str, ...] = STUDY_CHANNELS

    def __post_init__(self):
        if not self.cr_grid or not self.filter_lengths or not self.block_lengths:
            raise ConfigError("cr_grid, filter_lengths and block_lengths must be non-empty")
        for cr in (*self.cr_grid, self.study_cr):
            try:
                keep_count(1, cr)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        for f in (*self.filter_lengths, self.study_filter_length):
            if f not in SUPPORTED_FILTER_LENGTHS:
                raise ConfigError(f"unsupported filter length {f}")
        if self.trials < 1 or self.study_trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.levels < 1:
            raise ConfigError("levels must be >= 1")
        if not 1 <= self.qbits <= 16:
            raise ConfigError("qbits must be in 1..16")
        if not self.link_rate_bps > 0:
            raise ConfigError("link_rate_bps must be positive")
        for name in (*self.sweep_channels, *self.study_channels):
            if name not in self.channels:
                raise ConfigError(f"unknown channel {name!r}")

    def channel(self, name: str) -> NamedChannel:
        return self.channels[name]

    def with_seed(self, master_seed: int) -> SweepConfig:
        return replace(self, master_seed=int(master_seed))


def _parse_grid(text: str, kind=float) -> tuple:
    text = text.strip()
    if ":" in text:
        parts = [p.strip() for p in text.split(":")]
        if len(parts) != 3:
            raise ConfigError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ConfigError(f"range step must be positive in {text!r}")
        vals, v, i = [], start, 0
        while v <= stop + 1e-9 * max(1.0, abs(stop)):
            vals.append(kind(round(v, 10)))
            i += 1
            v = start + i * step
        return tuple(vals)
    return tuple(kind(v.strip()) for v in text.split(",") if v.strip())


def _names(text: str) -> tuple[str, ...]:
    return tuple(v.strip().lower() for v in text.split(",") if v.strip())


def parse_config(text: str) -> SweepConfig:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None

    channels = default_channels()
    next_id = max(c.channel_id for c in channels.values()) + 1

    def set_ber(name: str, ber_text: str):
        nonlocal next_id
        name = name.lower()
        try:
            ber = float(ber_text)
        except ValueError:
            raise ConfigError(f"channel {name!r}: ber must be a number, got {ber_text!r}") from None
        try:
            if name in channels:
                old = channels[name]
                model = ChannelModel(old.model.quality, ber)
                channels[name] = NamedChannel(name, old.channel_id, model)
            else:
                channels[name] = NamedChannel(name, next_id, ChannelModel(Quality.CUSTOM, ber))
                next_id += 1
        except ValueError as exc:
            raise ConfigError(f"channel {name!r}: {exc}") from None

    kwargs = {}
    for section in cp.sections():
        low = section.lower()
        if low.startswith("channel."):
            name = low[len("channel."):]
            if "ber" in cp[section]:
                set_ber(name, cp[section]["ber"])
            continue
        for key, value in cp[section].items():
            if key.startswith("channel.") and key.endswith(".ber"):
                set_ber(key[len("channel."):-len(".ber")], value)

    try:
        if cp.has_section("sweep"):
            s = cp["sweep"]
            if "cr_grid" in s:
                kwargs["cr_grid"] = _parse_grid(s["cr_grid"], float)
            if "filter_lengths" in s:
                kwargs["filter_lengths"] = _parse_grid(s["filter_lengths"], int)
            if "block_lengths" in s:
                kwargs["block_lengths"] = _parse_grid(s["block_lengths"], int)
            for key in ("trials", "master_seed", "qbits", "levels"):
                if key in s:
                    kwargs[key] = int(s[key])
            for key in ("link_rate_bps", "log_base"):
                if key in s:
                    kwargs[key] = float(s[key])
            if "channels" in s:
                kwargs["sweep_channels"] = _names(s["channels"])
        if cp.has_section("channel_study"):
            s = cp["channel_study"]
            if "cr" in s:
                kwargs["study_cr"] = float(s["cr"])
            if "filter_length" in s:
                kwargs["study_filter_length"] = int(s["filter_length"])
            if "block_length" in s:
                kwargs["study_block_length"] = int(s["block_length"])
            if "trials" in s:
                kwargs["study_trials"] = int(s["trials"])
            if "channels" in s:
                kwargs["study_channels"] = _names(s["channels"])
            if "master_seed" in s and "master_seed" not in kwargs:
                kwargs["master_seed"] = int(s["master_seed"])
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad config value: {exc}") from None
    return SweepConfig(channels=channels, **kwargs)


def load_config(path) -> SweepConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
