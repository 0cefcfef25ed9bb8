import numpy as np
import pytest

from morlet_ridge import GeneratorSpec, WaveletShape, build_scale_grid, generate

# filled by tests/test_acceptance.py, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def shape5():
    return WaveletShape(5.0)


@pytest.fixture(scope="session")
def audio_grid(shape5):
    # 50 Hz is exactly on this grid: 200 * 2**(-16/8)
    return build_scale_grid(10.0, 200.0, 8, shape5)


@pytest.fixture(scope="session")
def cosine50():
    return generate(GeneratorSpec("sinusoid", n=4096, dt=1e-3, frequency=50.0))


@pytest.fixture(scope="session")
def chirp():
    return generate(GeneratorSpec("linear_chirp", n=4096, dt=1e-3, f0=20.0, chirp_rate=10.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
