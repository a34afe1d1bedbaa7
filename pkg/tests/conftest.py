import numpy as np
import pytest

from bedwave.oracles import sech2_trace_derivatives

G = 9.81


@pytest.fixture
def g():
    return G


@pytest.fixture(scope="session")
def sech2():
    """Exact derivatives of 0.1 sech^2(x), orders 0..4."""
    return sech2_trace_derivatives(0.1)


def rel_err(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    scale = np.max(np.abs(b))
    return float(np.max(np.abs(a - b)) / scale) if scale > 0 else float(np.max(np.abs(a - b)))


_ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record and print one ``PASS/FAIL criterion N: ...`` line, then assert."""

    def report(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
