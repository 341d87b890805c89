import math

import pytest

from qubit_decoherence.circuit import BathWindow, complete_circuit

# operating point used throughout: 134 pH junction at 13.5 GHz, 10 kOhm loss, 10 mK
L_J = 134e-12
R = 10e3
F_J = 13.5e9
T_OP = 0.01


@pytest.fixture
def qubit():
    return complete_circuit(L_J, R, F_J, T_OP)


@pytest.fixture
def wide_window():
    """1 MHz high-pass, 1 THz low-pass."""
    return BathWindow.from_hz(1e6, 1e12)


@pytest.fixture
def unit_window():
    """Scale-free window, omega_b = 1, omega_c = 1e4."""
    return BathWindow(1.0, 1e4)


def rel(a, b):
    return abs(a - b) / abs(b)


TWO_PI = 2.0 * math.pi


# one verdict line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda x: int(x.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)
