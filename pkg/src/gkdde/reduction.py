"""Galerkin-Koornwinder reduction of a scalar DDE to an N-dimensional ODE.

The DDE handled here is::

    x'(t) = a x(t) + b x(t - tau) + c int_{t-tau}^{t} x(s) ds
            + F(x(t), x(t - tau), int_{t-tau}^{t} x(s) ds)

Its history segment ``u(t, theta) = x(t + theta)`` is approximated by
``sum_j y_j(t) K_j^tau(theta)`` and the coefficients obey
``y' = A y + F_N(y)`` with ``A = (2/tau) P + Q``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .derivative_coeffs import solve_coeffs
from .koornwinder import (
    QuadratureRule,
    _check_tau,
    gauss_legendre,
    koornwinder_at_minus_one,
    koornwinder_norm_sq,
    koornwinder_table,
)

Nonlinearity = Callable[[float, float, float], float]


class PolynomialNonlinearity:
    """``F(x, xd, xi) = sum coeff * x**p1 * xd**p2 * xi**p3``.

    ``terms`` is a sequence of ``(coeff, (p1, p2, p3))`` pairs with
    nonnegative integer powers. Serializes to the model-file term list.
    """

    def __init__(self, terms: Sequence[tuple[float, Sequence[int]]] = ()):
        cleaned = []
        for coeff, powers in terms:
            powers = tuple(int(p) for p in powers)
            if len(powers) != 3 or min(powers) < 0:
                raise ValueError(f"powers must be three nonnegative integers, got {powers}")
            cleaned.append((float(coeff), powers))
        self.terms = tuple(cleaned)

    def __call__(self, x, xd, xi):
        total = 0.0
        for coeff, (p1, p2, p3) in self.terms:
            total = total + coeff * x**p1 * xd**p2 * xi**p3
        return total

    @property
    def is_zero(self) -> bool:
        return all(coeff == 0.0 for coeff, _ in self.terms)

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "powers": list(p)} for c, p in self.terms]

    @classmethod
    def from_json(cls, items: list[dict]) -> "PolynomialNonlinearity":
        return cls((item["coeff"], item["powers"]) for item in items)

    def __eq__(self, other):
        return isinstance(other, PolynomialNonlinearity) and self.terms == other.terms

    def __repr__(self):
        return f"PolynomialNonlinearity({list(self.terms)!r})"


ZERO = PolynomialNonlinearity()


@dataclass(frozen=True)
class DDESpec:
    """Coefficients ``a, b, c``, delay ``tau`` and nonlinearity ``F`` of a scalar DDE."""

    a: float
    b: float
    c: float
    tau: float
    nonlinearity: Nonlinearity = ZERO
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "tau", _check_tau(self.tau))
        for coef in ("a", "b", "c"):
            value = float(getattr(self, coef))
            if not math.isfinite(value):
                raise ValueError(f"coefficient {coef} must be finite, got {value}")
            object.__setattr__(self, coef, value)

    def rhs(self, x: float, xd: float, xi: float) -> float:
        """Right-hand side given current state, delayed state and distributed integral."""
        return self.a * x + self.b * xd + self.c * xi + self.nonlinearity(x, xd, xi)

    def with_tau(self, tau: float) -> "DDESpec":
        return DDESpec(self.a, self.b, self.c, tau, self.nonlinearity, self.name)


@dataclass(frozen=True)
class HistorySegment:
    """Initial history ``phi`` on ``[-tau, 0]``.

    ``func`` should accept numpy arrays; scalar-only callables are
    vectorized on demand. ``value_at_zero`` defaults to ``func(0)``.
    """

    func: Callable
    value_at_zero: float | None = None

    def __post_init__(self):
        if self.value_at_zero is None:
            object.__setattr__(self, "value_at_zero", float(np.asarray(self.func(0.0))))

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        try:
            values = np.asarray(self.func(theta), dtype=float)
        except (TypeError, ValueError):
            values = np.vectorize(lambda t: float(self.func(t)))(theta)
        return np.broadcast_to(values, theta.shape).astype(float)

    @classmethod
    def constant(cls, value: float) -> "HistorySegment":
        value = float(value)
        return cls(lambda theta: np.full(np.shape(theta), value), value)

    @classmethod
    def polynomial(cls, coeffs: Sequence[float]) -> "HistorySegment":
        """``phi(theta) = coeffs[0] + coeffs[1] theta + ...``."""
        coeffs = [float(c) for c in coeffs]
        if not coeffs:
            raise ValueError("polynomial history needs at least one coefficient")
        poly = np.polynomial.Polynomial(coeffs)
        return cls(lambda theta: poly(np.asarray(theta, dtype=float)), coeffs[0])


def as_history(phi) -> HistorySegment:
    if isinstance(phi, HistorySegment):
        return phi
    if callable(phi):
        return HistorySegment(phi)
    return HistorySegment.constant(phi)


def inverse_norms(N: int) -> np.ndarray:
    """``nu_j = 1 / ||K_j||^2`` for ``j < N``."""
    return np.array([1.0 / koornwinder_norm_sq(j) for j in range(N)])


@lru_cache(maxsize=None)
def transport_matrix(N: int) -> np.ndarray:
    """The model-independent matrix ``P`` (read-only, cached per ``N``).

    ``P[i, j] = [i < j] a[j, i] - nu_i sum_k a[j, k]``.
    """
    nu = inverse_norms(N)
    P = np.zeros((N, N))
    for j in range(1, N):
        a_j = solve_coeffs(j)
        P[:j, j] = a_j
        P[:, j] -= nu * a_j.sum()
    P.setflags(write=False)
    return P


def model_matrix(spec: DDESpec, N: int) -> np.ndarray:
    """``Q[i, j] = nu_i (a + b K_j(-1) + c tau (2 delta_{j0} - 1))``."""
    nu = inverse_norms(N)
    k_minus = np.array([koornwinder_at_minus_one(j) for j in range(N)])
    sign = -np.ones(N)
    sign[0] = 1.0
    column = spec.a + spec.b * k_minus + spec.c * spec.tau * sign
    return np.outer(nu, column)


@dataclass(frozen=True)
class ReducedSystem:
    """Assembled ODE ``y' = A y + F_N(y)`` of dimension ``N``."""

    spec: DDESpec
    N: int
    A: np.ndarray = field(repr=False)
    P: np.ndarray = field(repr=False)
    Q: np.ndarray = field(repr=False)
    nu: np.ndarray = field(repr=False)
    endpoint_values: np.ndarray = field(repr=False)

    @property
    def tau(self) -> float:
        return self.spec.tau

    def nonlinearity(self, y: np.ndarray) -> np.ndarray:
        args = galerkin_arguments(y, self.endpoint_values, self.tau)
        return self.nu * self.spec.nonlinearity(*args)

    def rhs(self, y: np.ndarray) -> np.ndarray:
        return self.A @ y + self.nonlinearity(y)


def galerkin_arguments(y: np.ndarray, endpoint_values: np.ndarray, tau: float) -> tuple[float, float, float]:
    """Reconstructed current state, delayed state and distributed integral from ``y``."""
    x = float(np.sum(y))
    xd = float(np.dot(endpoint_values, y))
    xi = tau * (2.0 * float(y[0]) - x)
    return x, xd, xi


def assemble_matrix(spec: DDESpec, N: int) -> ReducedSystem:
    """Assemble ``A = (2/tau) P + Q`` and the supporting vectors for dimension ``N``."""
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    P = transport_matrix(N)
    Q = model_matrix(spec, N)
    A = (2.0 / spec.tau) * P + Q
    nu = inverse_norms(N)
    endpoint_values = np.array([koornwinder_at_minus_one(j) for j in range(N)])
    for arr in (A, Q, nu, endpoint_values):
        arr.setflags(write=False)
    return ReducedSystem(spec, N, A, P, Q, nu, endpoint_values)


def assemble_nonlinearity(spec: DDESpec, N: int) -> Callable[[np.ndarray, float], np.ndarray]:
    """Evaluator ``(y, tau) -> F_N(y, tau)`` for the nonlinear part of the reduced system."""
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    nu = inverse_norms(N)
    endpoint_values = np.array([koornwinder_at_minus_one(j) for j in range(N)])

    def evaluate(y, tau: float = spec.tau) -> np.ndarray:
        args = galerkin_arguments(np.asarray(y, dtype=float), endpoint_values, tau)
        return nu * spec.nonlinearity(*args)

    return evaluate


def project_history(phi, N: int, tau: float, rule: QuadratureRule | None = None) -> np.ndarray:
    """H-orthogonal projection of a history segment onto ``K_0^tau .. K_{N-1}^tau``.

    ``y_j = ((1/tau) int phi K_j^tau dtheta + phi(0)) / ||K_j||^2``.
    """
    tau = _check_tau(tau)
    phi = as_history(phi)
    rule = rule or gauss_legendre()
    s = rule.nodes
    theta = 0.5 * tau * (s - 1.0)
    K = koornwinder_table(N - 1, s)
    integral = 0.5 * (K * phi(theta)) @ rule.weights
    return (integral + phi.value_at_zero) * inverse_norms(N)


def reconstruct_state(y) -> float:
    """``x_N = sum_j y_j``; correctly rounded so every caller sees identical bits."""
    return math.fsum(np.asarray(y, dtype=float).ravel())


def reconstruct_field(y, theta_grid, tau: float) -> np.ndarray:
    """Sample ``u_N(theta) = sum_j y_j K_j^tau(theta)`` on ``theta_grid``."""
    tau = _check_tau(tau)
    y = np.asarray(y, dtype=float)
    theta = np.atleast_1d(np.asarray(theta_grid, dtype=float))
    slack = 1e-12 * tau
    if np.any(theta < -tau - slack) or np.any(theta > slack):
        raise ValueError(f"theta grid must lie in [-{tau}, 0]")
    theta = np.clip(theta, -tau, 0.0)
    K = koornwinder_table(len(y) - 1, 1.0 + 2.0 * theta / tau)
    values = y @ K
    values[theta == 0.0] = reconstruct_state(y)
    return values


# --- model files ---------------------------------------------------------

def spec_to_json(spec: DDESpec) -> dict:
    if not isinstance(spec.nonlinearity, PolynomialNonlinearity):
        raise TypeError("only polynomial nonlinearities can be serialized")
    return {
        "name": spec.name,
        "a": spec.a,
        "b": spec.b,
        "c": spec.c,
        "tau": spec.tau,
        "nonlinearity": spec.nonlinearity.to_json(),
    }


def spec_from_json(data: dict, tau: float | None = None) -> DDESpec:
    """Build a spec from the model-file mapping.

    ``nonlinearity`` is either a list of ``{coeff, powers}`` terms or
    ``{"builtin": name, ...}``; see :mod:`gkdde.models` for builtin names.
    """
    from .models import builtin_nonlinearity

    missing = [k for k in ("a", "b", "c") if k not in data]
    if missing:
        raise ValueError(f"model file is missing fields: {', '.join(missing)}")
    if tau is None:
        if "tau" not in data:
            raise ValueError("model file has no tau and none was given")
        tau = data["tau"]
    raw = data.get("nonlinearity", [])
    if isinstance(raw, dict):
        params = {k: v for k, v in raw.items() if k != "builtin"}
        F = builtin_nonlinearity(raw["builtin"], **params)
    else:
        F = PolynomialNonlinearity.from_json(raw)
    return DDESpec(data["a"], data["b"], data["c"], tau, F, data.get("name", "custom"))


def load_spec(path: str | Path, tau: float | None = None) -> DDESpec:
    with open(path) as fh:
        return spec_from_json(json.load(fh), tau=tau)
