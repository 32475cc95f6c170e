import numpy as np
import pytest

from bohrsharp.verify import cached_population

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def small_population():
    return cached_population(200, 11)


@pytest.fixture(scope="session")
def full_population():
    return cached_population(1000, 0)


def fft_coefficients(f, n_coeffs, rho=0.9, points=2048):
    """Taylor coefficients from samples of the rational form on |z| = rho."""
    z = rho * np.exp(2j * np.pi * np.arange(points) / points)
    c = np.fft.fft(f(z)) / points
    return c[:n_coeffs] / rho ** np.arange(n_coeffs)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
