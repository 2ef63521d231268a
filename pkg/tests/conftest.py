import numpy as np
import pytest

from eegdist import _fallback, kernels

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


BACKENDS = [pytest.param(_fallback, id="python")]
try:
    from eegdist import _core

    BACKENDS.append(pytest.param(_core, id="compiled"))
except ImportError:
    BACKENDS.append(pytest.param(None, id="compiled", marks=pytest.mark.skip("extension not built")))


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run a test once per kernel backend by swapping the selected implementation."""
    impl = request.param
    for name in ("analysis_step", "synthesis_step", "pack_codes", "unpack_codes", "bsc_flip"):
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return impl
