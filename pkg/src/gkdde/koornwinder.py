"""Legendre and Koornwinder polynomials, their rescaled versions and quadrature.

Koornwinder polynomials are built from Legendre polynomials as::

    K_n(s) = -(1 + s) L_n'(s) + (n^2 + n + 1) L_n(s),   s in [-1, 1]

They are orthogonal for the measure ``ds/2 + delta_1`` (Lebesgue plus a unit
point mass at ``s = 1``), satisfy ``K_n(1) = 1`` and
``K_n(-1) = (-1)^n (n^2 + n + 1)``. The rescaled family lives on ``[-tau, 0]``
through ``K_n^tau(theta) = K_n(1 + 2 theta / tau)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

DEFAULT_MAX_DEGREE = 200
DEFAULT_QUAD_ORDER = 64


def _check_degree(n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> int:
    n = int(n)
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    if n > max_degree:
        raise ValueError(f"degree {n} exceeds the cap {max_degree}")
    return n


def _check_tau(tau: float) -> float:
    tau = float(tau)
    if not tau > 0.0 or not np.isfinite(tau):
        raise ValueError(f"delay tau must be a positive finite number, got {tau}")
    return tau


def legendre_table(n_max: int, s) -> tuple[np.ndarray, np.ndarray]:
    """Values and first derivatives of ``L_0 .. L_{n_max}`` at ``s``.

    Returns two arrays of shape ``(n_max + 1,) + np.shape(s)``. Values use
    Bonnet's recurrence, derivatives use ``L'_{n+1} = L'_{n-1} + (2n+1) L_n``
    which stays well defined at (and near) the endpoints.
    """
    return _legendre_recurrence(_check_degree(n_max), np.asarray(s, dtype=float))


def _legendre_recurrence(n_max: int, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    L = np.empty((n_max + 1,) + s.shape)
    dL = np.empty_like(L)
    L[0] = 1.0
    dL[0] = 0.0
    if n_max >= 1:
        L[1] = s
        dL[1] = 1.0
    for n in range(1, n_max):
        L[n + 1] = ((2 * n + 1) * s * L[n] - n * L[n - 1]) / (n + 1)
        dL[n + 1] = dL[n - 1] + (2 * n + 1) * L[n]
    return L, dL


def legendre_eval(n: int, s, derivative: bool = False):
    """Evaluate ``L_n(s)``, or ``(L_n(s), L_n'(s))`` when ``derivative`` is set."""
    L, dL = legendre_table(n, s)
    if derivative:
        return L[n][()], dL[n][()]
    return L[n][()]


def koornwinder_table(n_max: int, s) -> np.ndarray:
    """``K_0 .. K_{n_max}`` evaluated at ``s``, shape ``(n_max + 1,) + np.shape(s)``."""
    s = np.asarray(s, dtype=float)
    L, dL = legendre_table(n_max, s)
    n = np.arange(n_max + 1, dtype=float).reshape((-1,) + (1,) * s.ndim)
    return -(1.0 + s) * dL + (n * n + n + 1.0) * L


def koornwinder_eval(n: int, s):
    """Koornwinder polynomial ``K_n(s)``."""
    return koornwinder_table(n, s)[n][()]


def koornwinder_eval_rescaled(n: int, theta, tau: float):
    """Rescaled Koornwinder polynomial ``K_n(1 + 2 theta / tau)`` on ``[-tau, 0]``."""
    tau = _check_tau(tau)
    return koornwinder_eval(n, 1.0 + 2.0 * np.asarray(theta, dtype=float) / tau)


def koornwinder_norm_sq(n: int) -> float:
    """Squared norm of ``(K_n, K_n(1))`` in the endpoint-augmented inner product."""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    return (n * n + 1) * ((n + 1) ** 2 + 1) / (2 * n + 1)


def koornwinder_at_minus_one(n: int) -> float:
    """Closed form ``K_n(-1) = (-1)^n (n^2 + n + 1)``."""
    return float((-1) ** n * (n * n + n + 1))


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on ``[-1, 1]``."""

    nodes: np.ndarray
    weights: np.ndarray

    @property
    def order(self) -> int:
        return len(self.nodes)

    def integrate(self, f: Callable) -> float:
        """Approximate ``int_{-1}^{1} f(s) ds``; ``f`` must accept an array."""
        return float(np.dot(self.weights, f(self.nodes)))


@lru_cache(maxsize=None)
def _gauss_legendre_arrays(m: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(1, m + 1)
    # Tricomi's initial guess, then Newton on L_m
    x = (1.0 - (m - 1) / (8.0 * m**3)) * np.cos(np.pi * (4 * k - 1) / (4 * m + 2))
    for _ in range(100):
        L, dL = _legendre_recurrence(m, x)
        dx = L[m] / dL[m]
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    L, dL = _legendre_recurrence(m, x)
    w = 2.0 / ((1.0 - x * x) * dL[m] ** 2)
    order = np.argsort(x)
    nodes, weights = x[order], w[order]
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(order: int = DEFAULT_QUAD_ORDER) -> QuadratureRule:
    """Gauss-Legendre rule with ``order`` nodes, exact for degree ``2*order - 1``."""
    order = int(order)
    if order < 1:
        raise ValueError(f"quadrature order must be >= 1, got {order}")
    nodes, weights = _gauss_legendre_arrays(order)
    return QuadratureRule(nodes, weights)


def inner_product_E(f: Callable, g: Callable, rule: QuadratureRule | None = None) -> float:
    """``(1/2) int_{-1}^{1} f g ds + f(1) g(1)``.

    The value of each function at ``s = 1`` serves as its point-mass component.
    """
    rule = rule or gauss_legendre()
    s = rule.nodes
    integral = np.dot(rule.weights, np.asarray(f(s)) * np.asarray(g(s)))
    return float(0.5 * integral + float(f(1.0)) * float(g(1.0)))


@dataclass(frozen=True)
class PolynomialBasis:
    """The first ``max_degree + 1`` Koornwinder polynomials, optionally rescaled to ``[-tau, 0]``."""

    max_degree: int
    tau: float = 2.0
    norms_sq: np.ndarray = field(init=False, repr=False)
    values_at_minus_one: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        _check_degree(self.max_degree)
        object.__setattr__(self, "tau", _check_tau(self.tau))
        n = range(self.max_degree + 1)
        norms = np.array([koornwinder_norm_sq(k) for k in n])
        minus = np.array([koornwinder_at_minus_one(k) for k in n])
        norms.setflags(write=False)
        minus.setflags(write=False)
        object.__setattr__(self, "norms_sq", norms)
        object.__setattr__(self, "values_at_minus_one", minus)

    @property
    def size(self) -> int:
        return self.max_degree + 1

    def __call__(self, s) -> np.ndarray:
        """Rows ``K_0(s) .. K_{max_degree}(s)``."""
        return koornwinder_table(self.max_degree, s)

    def rescaled(self, theta) -> np.ndarray:
        """Rows ``K_0^tau(theta) .. K_{max_degree}^tau(theta)``."""
        return koornwinder_table(self.max_degree, 1.0 + 2.0 * np.asarray(theta, dtype=float) / self.tau)
