import pytest

from sasaki_annulus import kernels

ACCEPTANCE_LINES = {}


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    """Each available kernel implementation in turn."""
    return kernels.BACKENDS[request.param]


@pytest.fixture
def criterion():
    """Record a one-line verdict for an acceptance criterion."""

    def record(number, passed, detail):
        ACCEPTANCE_LINES[number] = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
