import numpy as np
import pytest
from numpy.polynomial import Legendre


def koornwinder_poly(n: int) -> Legendre:
    """K_n as a Legendre series, built with numpy's own series arithmetic."""
    L = Legendre.basis(n)
    return -Legendre([1.0, 1.0]) * L.deriv() + (n * n + n + 1) * L


def legendre_interior(n: int, s: np.ndarray):
    """L_n, L_n', L_n'' at interior points without using any derivative recurrence.

    Values come from numpy's Legendre series; L_n' from
    (1 - s^2) L_n' = n (L_{n-1} - s L_n) and L_n'' from the Legendre ODE.
    """
    L = Legendre.basis(n)(s)
    L_prev = Legendre.basis(n - 1)(s) if n > 0 else np.zeros_like(s)
    one_minus = 1.0 - s * s
    dL = n * (L_prev - s * L) / one_minus
    d2L = (2.0 * s * dL - n * (n + 1) * L) / one_minus
    return L, dL, d2L


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# (criterion id, description, passed, measured detail), filled by test_acceptance.py
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, text, passed, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  AC{cid}  {text}  [{detail}]")
