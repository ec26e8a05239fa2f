"""Expansion of ``dK_n/ds`` in lower-degree Koornwinder polynomials.

For every ``n >= 1``::

    dK_n/ds = sum_{k<n} a[n, k] K_k

where ``a_n = (a[n, 0], ..., a[n, n-1])`` solves the upper triangular system
``T a_n = b_n`` assembled by :func:`build_matrix` and :func:`build_rhs`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .koornwinder import DEFAULT_MAX_DEGREE, _check_tau


def _check_n(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return n


def build_rhs(n: int) -> np.ndarray:
    """Right-hand side ``b_n`` (length ``n``).

    Uses the corrected odd-branch formula; older published versions carry a
    sign error and a spurious factor ``i``.
    """
    n = _check_n(n)
    b = np.empty(n)
    for i in range(n):
        if (n + i) % 2 == 0:
            b[i] = -0.5 * (2 * i + 1) * (n + i + 1) * (n - i)
        else:
            b[i] = ((n * n + n) * (2 * i + 1)
                    - 0.5 * i * (n + i) * (n - i + 1)
                    - 0.5 * (i + 1) * (n - i - 1) * (n + i + 2))
    return b


def build_matrix(n: int) -> np.ndarray:
    """Upper triangular ``T`` with ``T[i, i] = i^2 + 1`` and ``T[i, j] = -(2i + 1)`` for ``j > i``."""
    n = _check_n(n)
    i = np.arange(n, dtype=float)
    T = np.triu(np.broadcast_to(-(2 * i + 1)[:, None], (n, n)), k=1)
    T[np.diag_indices(n)] = i * i + 1
    return T


def back_substitute(T: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(b)
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (b[i] - T[i, i + 1:] @ x[i + 1:]) / T[i, i]
    return x


@lru_cache(maxsize=None)
def _solve_cached(n: int) -> np.ndarray:
    a = back_substitute(build_matrix(n), build_rhs(n))
    a.setflags(write=False)
    return a


def solve_coeffs(n: int) -> np.ndarray:
    """The coefficient vector ``a_n`` such that ``dK_n/ds = sum_k a_n[k] K_k``."""
    return _solve_cached(_check_n(n)).copy()


def rescaled_derivative_coeffs(n: int, tau: float) -> np.ndarray:
    """Coefficients of ``dK_n^tau/dtheta`` in ``K_0^tau .. K_{n-1}^tau``, i.e. ``(2/tau) a_n``."""
    tau = _check_tau(tau)
    return (2.0 / tau) * _solve_cached(_check_n(n))


@dataclass(frozen=True)
class DerivativeTable:
    """Strictly lower triangular table ``a[n, k]`` for ``0 <= k < n <= max_degree``."""

    max_degree: int
    rows: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.max_degree <= DEFAULT_MAX_DEGREE:
            raise ValueError(f"max_degree must be in [0, {DEFAULT_MAX_DEGREE}], got {self.max_degree}")
        rows = tuple(_solve_cached(n) for n in range(1, self.max_degree + 1))
        object.__setattr__(self, "rows", rows)

    def __getitem__(self, n: int) -> np.ndarray:
        """Row ``a_n``; row 0 is empty."""
        if n == 0:
            return np.zeros(0)
        return self.rows[n - 1]

    def as_matrix(self) -> np.ndarray:
        """Dense ``(max_degree + 1) x (max_degree + 1)`` array with ``D[n, k] = a[n, k]``."""
        size = self.max_degree + 1
        D = np.zeros((size, size))
        for n, row in enumerate(self.rows, start=1):
            D[n, :n] = row
        return D
