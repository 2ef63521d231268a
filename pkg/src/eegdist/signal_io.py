"""Signal ingestion, synthetic EEG, and experiment-record CSV files."""
from __future__ import annotations

import csv
import math
from dataclasses import astuple, dataclass, fields
from pathlib import Path

import numpy as np

DEFAULT_SAMPLING_RATE = 173.61  # Bonn EEG database

RECORD_COLUMNS = (
    "cr",
    "filter_length",
    "data_length",
    "transmission_delay_ms",
    "channel",
    "prd",
    "log_prd",
)


class SignalError(ValueError):
    pass


class RecordFormatError(ValueError):
    pass


class Signal:
    """A single-channel EEG trace in microvolts."""

    __slots__ = ("samples", "sampling_rate")

    def __init__(self, samples, sampling_rate: float = DEFAULT_SAMPLING_RATE, validate: bool = True):
        self.samples = np.ascontiguousarray(samples, dtype=np.float64)
        self.sampling_rate = float(sampling_rate)
        if validate:
            if self.samples.ndim != 1 or self.samples.size < 2:
                raise SignalError("a signal needs at least 2 samples")
            if not np.all(np.isfinite(self.samples)):
                raise SignalError("signal contains NaN or infinite samples")
            if not self.sampling_rate > 0:
                raise SignalError(f"sampling rate must be positive, got {sampling_rate}")

    def __len__(self):
        return self.samples.size

    def __repr__(self):
        return f"Signal(ns={self.samples.size}, sampling_rate={self.sampling_rate})"

    def __eq__(self, other):
        if not isinstance(other, Signal):
            return NotImplemented
        return self.sampling_rate == other.sampling_rate and np.array_equal(
            self.samples, other.samples
        )

    def block(self, offset: int, length: int) -> Signal:
        return Signal(self.samples[offset : offset + length], self.sampling_rate)


def load_ascii_signal(path, sampling_rate: float = DEFAULT_SAMPLING_RATE) -> Signal:
    """Read one amplitude per line (Bonn database text format).

    Blank lines are skipped; any other line that does not parse as a number
    raises :class:`SignalError` naming the 1-based line number.
    """
    values = []
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.strip()
                if not text:
                    continue
                try:
                    values.append(float(text))
                except ValueError:
                    raise SignalError(f"{path}:{lineno}: cannot parse {text!r} as a number") from None
    except OSError as exc:
        raise SignalError(f"cannot read signal file {path}: {exc}") from exc
    if len(values) < 2:
        raise SignalError(f"{path}: need at least 2 samples, found {len(values)}")
    return Signal(values, sampling_rate)


def write_ascii_signal(signal: Signal, path) -> None:
    """Write one sample per line using shortest round-trip repr."""
    with open(path, "w", encoding="utf-8") as fh:
        for v in signal.samples.tolist():
            fh.write(repr(v) + "\n")


BANDS_HZ = (2.0, 6.0, 10.0, 20.0)  # delta, theta, alpha, beta
BAND_WEIGHTS = (1.0, 0.6, 0.8, 0.3)
NOISE_RELATIVE_POWER = 0.2
PEAK_UV = 100.0


def pink_noise(rng: np.random.Generator, ns: int) -> np.ndarray:
    white = rng.standard_normal(ns)
    spectrum = np.fft.rfft(white)
    freqs = np.arange(spectrum.size, dtype=np.float64)
    freqs[0] = 1.0
    spectrum = spectrum / np.sqrt(freqs)
    spectrum[0] = 0.0
    return np.fft.irfft(spectrum, n=ns)


def synth_eeg(seed: int, ns: int = 4096, sampling_rate: float = DEFAULT_SAMPLING_RATE) -> Signal:
    """Deterministic pseudo-EEG: four band sinusoids plus 1/f noise, peak 100 uV."""
    if ns < 2:
        raise SignalError(f"ns must be >= 2, got {ns}")
    if not sampling_rate > 0:
        raise SignalError(f"sampling rate must be positive, got {sampling_rate}")
    rng = np.random.Generator(np.random.PCG64(seed))
    t = np.arange(ns) / sampling_rate
    phases = rng.uniform(0.0, 2.0 * np.pi, size=len(BANDS_HZ))
    tones = np.zeros(ns)
    for f, w, ph in zip(BANDS_HZ, BAND_WEIGHTS, phases):
        tones += w * np.sin(2.0 * np.pi * f * t + ph)
    noise = pink_noise(rng, ns)
    tone_power = float(np.mean(tones**2))
    noise_power = float(np.mean(noise**2))
    if noise_power > 0:
        noise *= math.sqrt(NOISE_RELATIVE_POWER * tone_power / noise_power)
    x = tones + noise
    peak = float(np.max(np.abs(x)))
    if peak > 0:
        x *= PEAK_UV / peak
    return Signal(x, sampling_rate)


@dataclass(frozen=True)
class ExperimentRecord:
    cr: float
    filter_length: int
    data_length: int
    transmission_delay_ms: float
    channel: int
    prd: float
    log_prd: float

    def as_row(self) -> list[str]:
        return [
            _fmt(self.cr),
            str(int(self.filter_length)),
            str(int(self.data_length)),
            _fmt(self.transmission_delay_ms),
            str(int(self.channel)),
            _fmt(self.prd),
            _fmt(self.log_prd),
        ]


_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentRecord)}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_records(records, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RECORD_COLUMNS)
        for rec in records:
            writer.writerow(rec.as_row())


def read_records(path) -> list[ExperimentRecord]:
    """Parse a records CSV; raises RecordFormatError naming the bad column or row."""
    try:
        fh = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise RecordFormatError(f"cannot read records file {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise RecordFormatError(f"{path}: empty file, expected header")
        header = [h.strip() for h in header]
        missing = [c for c in RECORD_COLUMNS if c not in header]
        if missing:
            raise RecordFormatError(f"{path}: missing column(s): {', '.join(missing)}")
        pos = {name: header.index(name) for name in RECORD_COLUMNS}
        out = []
        for rowno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise RecordFormatError(
                    f"{path}: row {rowno} has {len(row)} fields, expected {len(header)}"
                )
            try:
                values = {
                    name: (int(row[i]) if _FIELD_TYPES[name] == "int" else float(row[i]))
                    for name, i in pos.items()
                }
            except ValueError as exc:
                raise RecordFormatError(f"{path}: row {rowno}: {exc}") from None
            out.append(ExperimentRecord(**values))
    return out


def records_to_columns(records) -> dict[str, np.ndarray]:
    rows = [astuple(r) for r in records]
    arr = np.array(rows, dtype=np.float64).reshape(len(rows), len(RECORD_COLUMNS))
    return {name: arr[:, i] for i, name in enumerate(RECORD_COLUMNS)}
