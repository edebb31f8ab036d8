import numpy as np
import pytest

from alemo import kernels


def _available(name):
    try:
        kernels.get_backend(name)
    except ImportError:
        return False
    return True


BACKENDS = [b for b in ("python", "cython") if _available(b)]


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
