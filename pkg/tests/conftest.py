"""Shared fixtures and the acceptance-summary terminal hook."""

import numpy as np
import pytest

from sdsvqe import model, spectrum


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance(request):
    """Recorder for one PASS/FAIL line per acceptance criterion."""
    cfg = request.config

    def record(num, passed, detail):
        word = "PASS" if passed else "FAIL"
        cfg._acceptance_lines.append((num, f"criterion {num:2d} {word}  {detail}"))
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = sorted(getattr(config, "_acceptance_lines", []))
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def pair_q4():
    return model.build_operators(model.ModelConfig(lam=0.01, qubits=4))


@pytest.fixture(scope="session")
def pair_q6():
    return model.build_operators(model.ModelConfig(lam=0.01, qubits=6))


@pytest.fixture(scope="session")
def pair_q8():
    return model.build_operators(model.ModelConfig(lam=0.005, qubits=8))


@pytest.fixture(scope="session")
def filter_q4(pair_q4):
    return spectrum.constrained_spectrum(pair_q4, method="filter")


@pytest.fixture(scope="session")
def project_q4(pair_q4):
    return spectrum.constrained_spectrum(pair_q4, method="project")


def random_hermitian(n, rng):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


@pytest.fixture(scope="session")
def hermitian_factory():
    return random_hermitian
