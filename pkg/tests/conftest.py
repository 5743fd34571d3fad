import os

import pytest

from pwbench.hashcore._backend import available, load


def cpu_count() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


@pytest.fixture(params=available())
def backend(request):
    """Each importable kernel module in turn."""
    return load(request.param)


@pytest.fixture
def native():
    if "native" not in available():
        pytest.skip("compiled extension not built")
    return load("native")


@pytest.fixture
def pure():
    return load("python")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
