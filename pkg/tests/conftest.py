import pytest

from cyclominors import _minors

ALL_BACKENDS = sorted(_minors.BACKENDS)


@pytest.fixture(params=ALL_BACKENDS)
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
