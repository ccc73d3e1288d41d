import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from entbounds.states import BipartiteSplit, PureState, QuantumState

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

QUBITS = BipartiteSplit(2, 2)


def ket(*amps):
    return PureState.normalized(np.asarray(amps, dtype=complex))


def bell_phi_plus():
    return ket(1, 0, 0, 1)


def singlet():
    return ket(0, 1, -1, 0)


def werner(p):
    s = singlet().amplitudes
    return QuantumState(p * np.outer(s, s.conj()) + (1 - p) * np.eye(4) / 4, QUBITS)


@pytest.fixture
def qubits():
    return QUBITS


@pytest.fixture
def bell():
    return bell_phi_plus()


# acceptance results, printed one line per criterion at the end of the session
ACCEPTANCE = {}


def record_acceptance(number, ok, detail):
    ACCEPTANCE[number] = (bool(ok), detail)
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
