"""The two studies: ideal-channel distortion modelling and the channel-effect study."""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import transmit
from .codec import decode, encode
from .config import SweepConfig
from .metrics import MetricError, log_distortion, prd
from .rng import mix_seeds, splitmix64, uniform_int
from .signal_io import ExperimentRecord, Signal, records_to_columns
from .stats import (
    INTERCEPT,
    NestedAnova,
    OneWayAnova,
    PaperModelCoefficients,
    RegressionFit,
    TukeyResult,
    nested_anova,
    ols_fit,
    one_way_anova,
    tukey_hsd,
)
from .wavelet import WaveletSpec

FULL_TERMS = ("cr", "filter_length", "data_length", "transmission_delay_ms")
MODEL_TERMS = {
    "full": FULL_TERMS,
    "reduced1": FULL_TERMS[:3],
    "reduced2": FULL_TERMS[:2],
}
_STUDY_TAG = 0x5354554459  # separates channel-study seeds from sweep seeds


class ExperimentError(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    cr: float
    filter_length: int
    block_length: int
    channel_name: str
    channel_id: int
    trial: int
    seed: int
    block_seed: int | None = None


def _measure(signal: Signal, cell: Cell, config: SweepConfig) -> ExperimentRecord:
    ns = len(signal)
    block_seed = cell.seed if cell.block_seed is None else cell.block_seed
    offset = uniform_int(block_seed, 0, ns - cell.block_length + 1)
    block = signal.block(offset, cell.block_length)
    spec = WaveletSpec(cell.filter_length, config.levels)
    sent = encode(block, spec, cell.cr, config.qbits)
    model = config.channel(cell.channel_name).model.with_seed(splitmix64(cell.seed, 1))
    received = transmit(sent, model)
    recon = decode(received, lenient=True, sampling_rate=signal.sampling_rate)
    ds = prd(block, recon)
    d = log_distortion(ds, config.log_base) if ds > 0 else math.nan
    delay_ms = sent.bit_length / config.link_rate_bps * 1000.0
    return ExperimentRecord(
        cr=cell.cr, filter_length=cell.filter_length, data_length=cell.block_length,
        transmission_delay_ms=delay_ms, channel=cell.channel_id, prd=ds, log_prd=d,
    )


def _run_cells(signal, cells, config, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            # map preserves input order, so output stays canonical
            return list(pool.map(lambda c: _measure(signal, c, config), cells))
    return [_measure(signal, c, config) for c in cells]


def _check_blocks(signal: Signal, lengths, levels):
    for L in lengths:
        if L > len(signal):
            raise ExperimentError(f"block length {L} exceeds signal length {len(signal)}")
        if L % (1 << levels):
            raise ExperimentError(f"block length {L} is not divisible by 2**{levels}")


def sweep_cells(config: SweepConfig, signal_length: int | None = None) -> list[Cell]:
    """All sweep cells in canonical (cr, F, L, channel, trial) order."""
    cells = []
    for ci, cr in enumerate(config.cr_grid):
        for fi, flen in enumerate(config.filter_lengths):
            for li, L in enumerate(config.block_lengths):
                for name in config.sweep_channels:
                    cid = config.channel(name).channel_id
                    for t in range(config.trials):
                        seed = mix_seeds(config.master_seed, ci, fi, li, cid, t)
                        cells.append(Cell(float(cr), int(flen), int(L), name, cid, t, seed))
    return cells


def run_sweep(signal: Signal, config: SweepConfig, workers: int = 1) -> list[ExperimentRecord]:
    """Encode/transmit/decode every grid cell and record PRD and its log."""
    _check_blocks(signal, config.block_lengths, config.levels)
    return _run_cells(signal, sweep_cells(config), config, workers)


# model selection -----------------------------------------------------------

@dataclass
class SelectionStep:
    fit: RegressionFit
    dropped: str | None = None
    vs_previous: NestedAnova | None = None
    vs_full: NestedAnova | None = None

    def to_dict(self) -> dict:
        return {
            "terms": self.fit.regressors,
            "dropped": self.dropped,
            "fit": self.fit.to_dict(),
            "anova_vs_previous": self.vs_previous.to_dict() if self.vs_previous else None,
            "anova_vs_full": self.vs_full.to_dict() if self.vs_full else None,
        }


@dataclass
class SelectionReport:
    steps: list[SelectionStep]
    alpha_keep: float
    n_used: int
    n_excluded: int
    skipped_constant: list[str] = field(default_factory=list)

    @property
    def full(self) -> RegressionFit:
        return self.steps[0].fit

    @property
    def chosen(self) -> RegressionFit:
        return self.steps[-1].fit

    def to_dict(self) -> dict:
        return {
            "alpha_keep": self.alpha_keep,
            "n_used": self.n_used,
            "n_excluded": self.n_excluded,
            "skipped_constant": self.skipped_constant,
            "chosen_terms": self.chosen.regressors,
            "steps": [s.to_dict() for s in self.steps],
        }


def _regression_data(records, terms):
    cols = records_to_columns(records)
    y = cols["log_prd"]
    ok = np.isfinite(y) & (cols["prd"] > 0)
    return {t: cols[t][ok] for t in terms}, y[ok], int((~ok).sum())


def fit_model(records, terms=FULL_TERMS, log_base: float = 10.0) -> RegressionFit:
    data, y, _ = _regression_data(records, terms)
    return ols_fit(data, y, response_name="log_prd", log_base=log_base)


def model_selection(records, alpha_keep: float = 0.05, terms=FULL_TERMS,
                    log_base: float = 10.0) -> SelectionReport:
    """Backward elimination on p-values with a nested F test at every step.

    Records with PRD = 0 (log undefined) are excluded and counted; regressors
    that are constant in the data are skipped since they are confounded with
    the intercept.
    """
    if not 0.0 < alpha_keep < 1.0:
        raise ExperimentError(f"alpha must be in (0, 1), got {alpha_keep}")
    data, y, excluded = _regression_data(records, terms)
    skipped = [t for t in terms if data[t].size and np.ptp(data[t]) == 0.0]
    current = [t for t in terms if t not in skipped]
    if not current:
        raise ExperimentError("no non-constant regressors to fit")

    def fit(ts):
        return ols_fit({t: data[t] for t in ts}, y, response_name="log_prd", log_base=log_base)

    full = fit(current)
    steps = [SelectionStep(full)]
    while len(current) > 1:
        prev = steps[-1].fit
        pvals = {t: prev.p(t) for t in current}
        worst = max(current, key=lambda t: (pvals[t], -current.index(t)))
        if not pvals[worst] > alpha_keep:
            break
        current = [t for t in current if t != worst]
        reduced = fit(current)
        steps.append(SelectionStep(
            reduced, worst, nested_anova(prev, reduced), nested_anova(full, reduced)
        ))
    return SelectionReport(steps, alpha_keep, int(y.size), excluded, skipped)


# channel study -------------------------------------------------------------

@dataclass(frozen=True)
class BoxSummary:
    """Tukey-hinge box plot statistics; whiskers reach the last non-outlier."""

    channel: int
    name: str
    n: int
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float
    outliers: tuple[float, ...]


def fivenum(values) -> tuple[float, float, float, float, float]:
    x = np.sort(np.asarray(values, dtype=np.float64))
    n = x.size
    n4 = math.floor((n + 3) / 2) / 2
    d = [1, n4, (n + 1) / 2, n + 1 - n4, n]
    return tuple(0.5 * (x[math.floor(di) - 1] + x[math.ceil(di) - 1]) for di in d)


def box_summary(values, channel: int, name: str) -> BoxSummary:
    x = np.sort(np.asarray(values, dtype=np.float64))
    _, q1, med, q3, _ = fivenum(x)
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = x[(x >= lo_fence) & (x <= hi_fence)]
    outliers = tuple(float(v) for v in x[(x < lo_fence) | (x > hi_fence)])
    return BoxSummary(channel, name, int(x.size), float(inside.min()), float(q1), float(med),
                      float(q3), float(inside.max()), outliers)


@dataclass
class ChannelStudy:
    records: list[ExperimentRecord]
    channel_names: list[str]
    groups: dict[str, np.ndarray]
    anova: OneWayAnova
    tukey: TukeyResult
    boxes: list[BoxSummary]

    def group_means(self) -> dict[str, float]:
        return {name: float(np.mean(v)) for name, v in self.groups.items()}


def study_cells(config: SweepConfig) -> list[Cell]:
    cells = []
    for name in config.study_channels:
        cid = config.channel(name).channel_id
        for t in range(config.study_trials):
            # blocks depend on the trial only, so every channel sees the same data
            seed = mix_seeds(config.master_seed, _STUDY_TAG, cid, t)
            block_seed = mix_seeds(config.master_seed, _STUDY_TAG, t)
            cells.append(Cell(float(config.study_cr), int(config.study_filter_length),
                              int(config.study_block_length), name, cid, t, seed, block_seed))
    return cells


def run_channel_study(signal: Signal, config: SweepConfig, workers: int = 1,
                      confidence: float = 0.95) -> ChannelStudy:
    """Fixed encoder settings, many trials per channel; ANOVA + Tukey on log PRD by channel."""
    names = list(config.study_channels)
    if len(names) < 2:
        raise ExperimentError("the channel study needs at least 2 channel models")
    if len(set(config.channel(n).channel_id for n in names)) != len(names):
        raise ExperimentError("channel study channels must be distinct")
    if config.study_trials < 2:
        raise ExperimentError("the channel study needs at least 2 trials per channel")
    _check_blocks(signal, [config.study_block_length], config.levels)
    records = _run_cells(signal, study_cells(config), config, workers)
    groups = {}
    for name in names:
        cid = config.channel(name).channel_id
        groups[name] = np.array([r.log_prd for r in records if r.channel == cid])
    anova = one_way_anova(groups)
    tukey = tukey_hsd(groups, confidence)
    boxes = [box_summary(groups[n], config.channel(n).channel_id, n) for n in names]
    return ChannelStudy(records, names, groups, anova, tukey, boxes)


# prediction ------------------------------------------------------------------

def predict_distortion(model, cr: float, filter_length: float) -> tuple[float, float]:
    """Evaluate the two-regressor log-distortion model; returns (D, Ds)."""
    if isinstance(model, PaperModelCoefficients):
        d = model.beta0 + model.beta1 * cr + model.beta2 * filter_length
        return d, model.log_base**d
    if not isinstance(model, RegressionFit):
        raise ExperimentError(f"cannot predict from {type(model).__name__}")
    if sorted(model.term_names) != sorted([INTERCEPT, "cr", "filter_length"]):
        raise ExperimentError(
            f"prediction needs a model with terms intercept, cr, filter_length; got {model.term_names}"
        )
    for name, value in (("cr", cr), ("filter_length", filter_length)):
        rng = model.term_ranges.get(name)
        if rng and not rng[0] <= value <= rng[1]:
            warnings.warn(f"{name}={value} is outside the fitted range {rng}", stacklevel=2)
    d = model.predict({"cr": cr, "filter_length": filter_length})
    base = model.log_base if model.log_base is not None else 10.0
    return d, base**d
