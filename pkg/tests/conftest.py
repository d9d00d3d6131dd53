import os
import sys

import mpmath
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))


def oracle(q, x, dx=0, dq=0, terms=200, dps=100):
    """Brute-force derivative of sum q^(j(j+1)/2) x^j, term by term, at fixed precision."""
    with mpmath.workdps(dps):
        q = mpmath.mpf(q)
        x = mpmath.mpf(x) if not isinstance(x, (complex, mpmath.mpc)) else mpmath.mpc(x)
        s = 0
        for j in range(terms):
            e = j * (j + 1) // 2
            if j < dx or e < dq:
                continue
            c = mpmath.ff(j, dx) * mpmath.ff(e, dq)
            s += c * q ** (e - dq) * x ** (j - dx)
        return +s


@pytest.fixture
def theta_oracle():
    return oracle


ACCEPTANCE_LINES = []


def record_acceptance(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
