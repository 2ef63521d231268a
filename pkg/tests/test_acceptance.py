"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line verdict that the terminal summary prints under
"acceptance criteria", then asserts. Run with ``pytest tests/test_acceptance.py``.
"""
import itertools
import math
import re
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from eegdist import cli
from eegdist.codec import EncodedBlock, decode, decode_coefficients, encode, threshold_to_ratio
from eegdist.config import SweepConfig
from eegdist.experiment import fit_model, model_selection, run_channel_study, run_sweep
from eegdist.signal_io import synth_eeg, write_ascii_signal
from eegdist.stats import (
    f_cdf,
    nested_anova,
    normal_cdf,
    ols_fit,
    studentized_range_ppf,
    t_cdf,
    t_two_sided,
    tukey_hsd,
)
from eegdist.wavelet import SUPPORTED_FILTER_LENGTHS, WaveletSpec, dwt, idwt_array
from golden import golden_block
from oracles import (
    f_cdf_quad,
    normal_cdf_quad,
    normal_equations_fit,
    pooled_t,
    qtukey_quad,
    t_cdf_quad,
)

DATA = Path(__file__).parent / "data"
SEEDS = range(20)
REQUIRED = 18


def verdict(n, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
    assert ok, detail


def test_criterion_1_wavelet_round_trip():
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst_rt = worst_parseval = 0.0
    for flen in SUPPORTED_FILTER_LENGTHS:
        for levels in range(1, 6):
            spec = WaveletSpec(flen, levels)
            x = rng.standard_normal(4096)
            c = dwt(x, spec)
            xr = idwt_array(c, spec)
            worst_rt = max(worst_rt, np.linalg.norm(x - xr) / np.linalg.norm(x))
            worst_parseval = max(worst_parseval, abs(c.flat @ c.flat - x @ x) / (x @ x))
    elapsed = time.perf_counter() - t0
    ok = worst_rt < 1e-9 and worst_parseval < 1e-9 and elapsed < 5.0
    verdict(1, ok, f"round-trip rel err {worst_rt:.1e}, Parseval {worst_parseval:.1e}, {elapsed:.2f}s")


def test_criterion_2_m_term_optimality():
    rng = np.random.default_rng(2)
    spec = WaveletSpec(2, 3)
    t0 = time.perf_counter()
    mismatches = 0
    for _ in range(5):
        x = rng.standard_normal(8)
        coeffs = dwt(x, spec)
        for m in range(1, 9):
            cr = (1 - m / 8) * 100
            kept = threshold_to_ratio(coeffs, cr)
            assert kept.m == m
            err = np.linalg.norm(x - idwt_array(kept, spec))
            best = math.inf
            for subset in itertools.combinations(range(8), m):
                mask = np.zeros(8, bool)
                mask[list(subset)] = True
                best = min(best, np.linalg.norm(x - idwt_array(coeffs.with_mask(mask), spec)))
            mismatches += err > best + 1e-12 * max(1.0, best)
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 1.0
    verdict(2, ok, f"{mismatches} non-optimal kept sets over 5 signals x 8 M values, {elapsed:.2f}s")


def test_criterion_3_ols_oracle():
    worst = 0.0
    for seed in range(100):
        g = np.random.default_rng(seed)
        n, p = int(g.integers(8, 51)), int(g.integers(1, 5))
        X = g.standard_normal((n, p)) * g.uniform(0.1, 10, p)
        y = X @ g.standard_normal(p) + g.standard_normal(n)
        fit = ols_fit(X, y)
        beta, se, r2 = normal_equations_fit(np.column_stack([np.ones(n), X]), y)
        worst = max(
            worst,
            np.max(np.abs(np.array(fit.beta) - beta) / np.maximum(np.abs(beta), 1e-300)),
            np.max(np.abs(np.array(fit.stderr) - se) / se),
            abs(fit.r_squared - r2) / abs(r2),
        )
    verdict(3, worst < 1e-8, f"max relative deviation from normal equations {worst:.1e} over 100 datasets")


def test_criterion_4_distributions():
    grid = np.linspace(-6, 6, 50)
    fgrid = np.linspace(0.01, 12, 50)
    err_n = max(abs(normal_cdf(z) - normal_cdf_quad(z)) for z in grid)
    err_t = max(abs(t_cdf(z, df) - t_cdf_quad(z, df)) for df in (1, 5, 295) for z in grid)
    err_f = max(abs(f_cdf(f, a, b) - f_cdf_quad(f, a, b)) for a, b in ((1, 10), (3, 1196)) for f in fgrid)
    q = studentized_range_ppf(0.95, 3, 10)
    q_ref = qtukey_quad(0.95, 3, 10)
    rng = np.random.default_rng(4)
    err_k2 = 0.0
    for _ in range(10):
        a, b = rng.normal(0, 1, 15), rng.normal(rng.uniform(0, 1.5), 1, 18)
        t, df = pooled_t(a, b)
        err_k2 = max(err_k2, abs(tukey_hsd([a, b]).pairs[0].p_adj - t_two_sided(t, df)))
    ok = max(err_n, err_t, err_f) < 1e-10 and abs(q - q_ref) < 5e-3 and err_k2 < 1e-6
    verdict(4, ok, f"CDF errors normal {err_n:.1e} t {err_t:.1e} F {err_f:.1e}; "
                   f"q(0.95,3,10) {q:.5f} vs {q_ref:.5f}; Tukey k=2 vs t {err_k2:.1e}")


def test_criterion_5_published_prediction(capsys):
    code = cli.main(["predict", "--paper", "--cr", "50", "--filter-length", "4"])
    out = capsys.readouterr().out
    d = float(re.search(r"^D = (\S+)", out, re.M).group(1))
    cli.main(["predict", "--paper", "--cr", "0", "--filter-length", "0"])
    d0 = float(re.search(r"^D = (\S+)", capsys.readouterr().out, re.M).group(1))
    ok = code == 0 and abs(d - 0.80667) < 1e-5 and d0 == -0.46375
    verdict(5, ok, f"D(50, 4) = {d:.7f}, D(0, 0) = {d0}")


def _regression_ok(seed):
    sig = synth_eeg(seed, 16384)
    records = run_sweep(sig, SweepConfig(master_seed=seed))
    report = model_selection(records, 0.05)
    full = report.full
    nested = nested_anova(full, fit_model(records, ("cr", "filter_length")))
    checks = (
        full.coef("cr") > 0 and full.coef("filter_length") < 0
        and report.chosen.coef("cr") > 0 and report.chosen.coef("filter_length") < 0,
        full.p("data_length") > 0.1 and full.p("transmission_delay_ms") > 0.1,
        nested.p > 0.5,
        full.r_squared >= 0.85,
    )
    return all(checks), len(records), full.r_squared, nested.p


def test_criterion_6_regression_shape():
    t0 = time.perf_counter()
    results = [_regression_ok(seed) for seed in SEEDS]
    elapsed = time.perf_counter() - t0
    passed = sum(r[0] for r in results)
    r2 = [r[2] for r in results]
    ok = passed >= REQUIRED and elapsed < 120
    verdict(6, ok, f"{passed}/20 seeds show b1 > 0, b2 < 0, p(L), p(T) > 0.1, nested p > 0.5, "
                   f"R^2 >= 0.85 ({results[0][1]} records/seed, R^2 {min(r2):.3f}-{max(r2):.3f}, "
                   f"{elapsed:.0f}s)")


def _ordering_ok(seed):
    study = run_channel_study(synth_eeg(seed, 16384), SweepConfig(master_seed=seed))
    means = list(study.group_means().values())
    increasing = all(a < b for a, b in zip(means, means[1:]))
    worst_pair = max(p.p_adj for p in study.tukey.pairs)
    return increasing and study.anova.p < 1e-6 and worst_pair < 0.05, study.anova.f


def test_criterion_7_channel_ordering():
    t0 = time.perf_counter()
    results = [_ordering_ok(seed) for seed in SEEDS]
    elapsed = time.perf_counter() - t0
    passed = sum(r[0] for r in results)
    fs = [r[1] for r in results]
    ok = passed >= REQUIRED and elapsed < 120
    verdict(7, ok, f"{passed}/20 seeds have increasing means, ANOVA p < 1e-6, all Tukey p_adj < 0.05 "
                   f"(F {min(fs):.0f}-{max(fs):.0f}, {elapsed:.0f}s)")


def test_criterion_8_determinism(tmp_path, capsys):
    sig = tmp_path / "sig.txt"
    write_ascii_signal(synth_eeg(8, 16384), sig)
    cfg = tmp_path / "cfg.ini"
    cfg.write_text("[sweep]\nmaster_seed = 8\n\n[channel_study]\ntrials = 50\n")
    outputs = {}
    for run, workers in (("a", 1), ("b", 1), ("c", 4)):
        assert cli.main(["sweep", "--config", str(cfg), "--signal", str(sig), "--workers", str(workers),
                         "--out", str(tmp_path / f"sweep_{run}.csv")]) == 0
        assert cli.main(["channel-study", "--config", str(cfg), "--signal", str(sig),
                         "--workers", str(workers), "--out-dir", str(tmp_path / f"study_{run}")]) == 0
        outputs[run] = [(tmp_path / f"sweep_{run}.csv").read_bytes()] + [
            (tmp_path / f"study_{run}" / name).read_bytes()
            for name in ("records.csv", "boxplot.csv", "anova.json", "tukey.json")
        ]
    capsys.readouterr()
    ok = outputs["a"] == outputs["b"] == outputs["c"]
    verdict(8, ok, "sweep and channel-study outputs byte-identical across 3 runs (1, 1 and 4 workers)")


def test_criterion_9_bitstream():
    rng = np.random.default_rng(9)
    exact = True
    for flen, cr, qbits in ((2, 40.0, 12), (8, 60.0, 8), (20, 85.0, 16)):
        x = rng.standard_normal(1024) * 50
        block = encode(x, WaveletSpec(flen), cr, qbits)
        raw = block.to_bytes()
        again = EncodedBlock.from_bytes(raw)
        exact &= again == block and again.to_bytes() == raw
        exact &= np.array_equal(decode_coefficients(again).flat, decode_coefficients(block).flat)
        exact &= np.array_equal(decode(again).samples, decode(block).samples)
    golden = (DATA / "golden_block.hex").read_text().strip()
    stable = golden_block().to_bytes().hex() == golden
    verdict(9, exact and stable, f"round-trip bit-exact: {exact}; golden fixture byte-stable: {stable}")
