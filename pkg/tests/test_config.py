import pytest

from eegdist.config import ConfigError, SweepConfig, load_config, parse_config


def test_defaults_balanced_grid():
    cfg = SweepConfig()
    n = len(cfg.cr_grid) * len(cfg.filter_lengths) * len(cfg.block_lengths) * cfg.trials
    assert n == 300
    assert cfg.channel("ideal").channel_id == 0
    assert [cfg.channel(c).model.ber for c in cfg.study_channels] == [1e-5, 1e-4, 1e-3, 5e-3]


def test_parse_full_example():
    cfg = parse_config("""
[sweep]
cr_grid = 30:90:10
filter_lengths = 2, 4, 20
block_lengths = 1024
trials = 3
master_seed = 42
qbits = 10
levels = 4
link_rate_bps = 1e6
log_base = 2.718281828459045

[channel.good]
ber = 2e-4

[channel.noisy]
ber = 0.01

[channel_study]
cr = 50
filter_length = 6
block_length = 2048
trials = 12
channels = good, noisy
""")
    assert cfg.cr_grid == (30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0)
    assert cfg.filter_lengths == (2, 4, 20)
    assert cfg.trials == 3 and cfg.master_seed == 42 and cfg.qbits == 10 and cfg.levels == 4
    assert cfg.channel("good").model.ber == 2e-4
    assert cfg.channel("good").channel_id == 2
    assert cfg.channel("noisy").channel_id == 5
    assert cfg.study_channels == ("good", "noisy") and cfg.study_trials == 12


def test_flat_ber_keys():
    cfg = parse_config("[sweep]\nchannel.bad.ber = 0.002\n")
    assert cfg.channel("bad").model.ber == 0.002


def test_fractional_range():
    cfg = parse_config("[sweep]\ncr_grid = 0:1:0.25\n")
    assert cfg.cr_grid == (0.0, 0.25, 0.5, 0.75, 1.0)


@pytest.mark.parametrize("text,msg", [
    ("[sweep]\ncr_grid = 100\n", "compression"),
    ("[sweep]\nfilter_lengths = 3\n", "filter length"),
    ("[sweep]\ntrials = 0\n", "trials"),
    ("[sweep]\ncr_grid = 1:2\n", "start:stop:step"),
    ("[sweep]\ncr_grid = 1:5:0\n", "step"),
    ("[channel.good]\nber = lots\n", "ber"),
    ("[channel.good]\nber = 1.5\n", "good"),
    ("[sweep]\nchannels = nowhere\n", "unknown channel"),
    ("[sweep]\ntrials = two\n", "bad config value"),
    ("not an ini", "malformed"),
])
def test_errors(text, msg):
    with pytest.raises(ConfigError, match=msg):
        parse_config(text)


def test_load_missing(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "nope.ini")


def test_with_seed():
    assert SweepConfig().with_seed(9).master_seed == 9
