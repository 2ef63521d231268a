import math

import numpy as np
import pytest

from eegdist.signal_io import (
    ExperimentRecord,
    RecordFormatError,
    Signal,
    SignalError,
    load_ascii_signal,
    read_records,
    synth_eeg,
    write_ascii_signal,
    write_records,
)


def test_load_simple(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("1\n2\n3\n")
    s = load_ascii_signal(p, 100.0)
    np.testing.assert_array_equal(s.samples, [1, 2, 3])
    assert s.sampling_rate == 100.0


def test_load_tolerates_whitespace_and_decimals(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("  -12 \n\n3.25\n\t7e1\n")
    np.testing.assert_array_equal(load_ascii_signal(p).samples, [-12, 3.25, 70])


def test_bonn_sized_file(tmp_path):
    p = tmp_path / "Z001.txt"
    p.write_text("\n".join(str(i % 300 - 150) for i in range(4096)) + "\n")
    assert len(load_ascii_signal(p)) == 4096


def test_parse_error_names_line(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("1\n2\nabc\n")
    with pytest.raises(SignalError, match=":3:"):
        load_ascii_signal(p)


@pytest.mark.parametrize("text", ["", "5\n", "\n\n4\n"])
def test_too_few_samples(tmp_path, text):
    p = tmp_path / "s.txt"
    p.write_text(text)
    with pytest.raises(SignalError):
        load_ascii_signal(p)


def test_missing_file(tmp_path):
    with pytest.raises(SignalError):
        load_ascii_signal(tmp_path / "nope.txt")


def test_signal_invariants():
    with pytest.raises(SignalError):
        Signal([1.0, math.nan])
    with pytest.raises(SignalError):
        Signal([1.0, 2.0], sampling_rate=0)


def test_text_round_trip_exact(tmp_path, rng):
    s = Signal(rng.standard_normal(500) * 1e3)
    p = tmp_path / "s.txt"
    write_ascii_signal(s, p)
    assert load_ascii_signal(p).samples.tobytes() == s.samples.tobytes()


def test_synth_deterministic():
    a, b = synth_eeg(7, 4096), synth_eeg(7, 4096)
    assert a.samples.tobytes() == b.samples.tobytes()


def test_synth_seed_matters():
    assert not np.array_equal(synth_eeg(1, 512).samples, synth_eeg(2, 512).samples)


@pytest.mark.parametrize("seed", range(5))
def test_synth_bounded(seed):
    s = synth_eeg(seed, 4096)
    assert np.all(np.isfinite(s.samples))
    assert np.max(np.abs(s.samples)) <= 500.0


def test_synth_rejects_short():
    with pytest.raises(SignalError):
        synth_eeg(0, 1)


def _records(rng, n=10):
    return [
        ExperimentRecord(
            cr=float(rng.uniform(0, 99)), filter_length=int(rng.integers(1, 11)) * 2,
            data_length=1024, transmission_delay_ms=float(rng.uniform(0, 100)),
            channel=int(rng.integers(0, 5)), prd=float(rng.uniform(0.1, 50)),
            log_prd=float(rng.normal()),
        )
        for _ in range(n)
    ]


def test_records_round_trip(tmp_path, rng):
    recs = _records(rng)
    p = tmp_path / "r.csv"
    write_records(recs, p)
    assert read_records(p) == recs


def test_empty_records_header_only(tmp_path):
    p = tmp_path / "r.csv"
    write_records([], p)
    assert p.read_text() == "cr,filter_length,data_length,transmission_delay_ms,channel,prd,log_prd\n"
    assert read_records(p) == []


def test_missing_column(tmp_path):
    p = tmp_path / "r.csv"
    p.write_text("cr,filter_length,data_length,channel,prd,log_prd\n1,2,3,0,1,0\n")
    with pytest.raises(RecordFormatError, match="transmission_delay_ms"):
        read_records(p)


def test_short_row_reports_row(tmp_path):
    p = tmp_path / "r.csv"
    p.write_text("cr,filter_length,data_length,transmission_delay_ms,channel,prd,log_prd\n1,2,3\n")
    with pytest.raises(RecordFormatError, match="row 2"):
        read_records(p)
