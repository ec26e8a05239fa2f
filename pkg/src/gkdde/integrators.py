"""Fixed-step RK4 integration of reduced systems and of the original DDE.

The reference solver works directly on the delay equation (method of steps).
Delayed values at half steps come from cubic Hermite interpolation of the
stored solution, and the distributed-delay integral is a composite Simpson
sum over the stored step grid, which lines up with the delay window because
the step must divide ``tau``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .koornwinder import gauss_legendre, koornwinder_table
from .reduction import (
    DDESpec,
    HistorySegment,
    ReducedSystem,
    as_history,
    assemble_matrix,
    project_history,
    reconstruct_state,
)

BLOWUP_THRESHOLD = 1e12


class BlowUpError(RuntimeError):
    """A state component became non-finite or exceeded :data:`BLOWUP_THRESHOLD`.

    ``trajectory`` holds everything computed up to and including ``time``.
    """

    def __init__(self, time: float, trajectory: "Trajectory"):
        super().__init__(f"solution blew up at t = {time:.17g}")
        self.time = time
        self.trajectory = trajectory


@dataclass
class Trajectory:
    """States on the uniform grid ``times``.

    Reduced runs store ``(n_times, N)`` coefficient vectors; reference runs
    store scalars and the slopes used for Hermite interpolation.
    """

    times: np.ndarray
    states: np.ndarray
    kind: str
    tau: float
    slopes: np.ndarray | None = field(default=None, repr=False)

    @property
    def step(self) -> float:
        return float(self.times[1] - self.times[0]) if len(self.times) > 1 else 0.0

    @property
    def x(self) -> np.ndarray:
        """Scalar state: ``x_N(t)`` for reduced runs, ``x(t)`` for reference runs."""
        if self.kind == "reduced":
            return np.array([reconstruct_state(y) for y in self.states])
        return np.asarray(self.states)

    def field(self, theta_grid) -> np.ndarray:
        """``u_N(t, theta)`` with shape ``(n_times, n_theta)`` (reduced runs only)."""
        if self.kind != "reduced":
            raise ValueError("the history field is only defined for reduced trajectories")
        theta = np.atleast_1d(np.asarray(theta_grid, dtype=float))
        slack = 1e-12 * self.tau
        if np.any(theta < -self.tau - slack) or np.any(theta > slack):
            raise ValueError(f"theta grid must lie in [-{self.tau}, 0]")
        theta = np.clip(theta, -self.tau, 0.0)
        K = koornwinder_table(self.states.shape[1] - 1, 1.0 + 2.0 * theta / self.tau)
        u = self.states @ K
        u[:, theta == 0.0] = self.x[:, None]
        return u


@dataclass(frozen=True)
class ErrorReport:
    sup: float
    rms: float

    def as_dict(self) -> dict:
        return {"sup": self.sup, "rms": self.rms}


def _step_count(t_end: float, h: float) -> int:
    if not h > 0.0:
        raise ValueError(f"step h must be positive, got {h}")
    if not t_end > 0.0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    n = int(round(t_end / h))
    if n < 1 or abs(n * h - t_end) > 1e-9 * max(1.0, t_end):
        raise ValueError(f"t_end = {t_end} is not a whole number of steps h = {h}")
    return n


def delay_steps(tau: float, h: float) -> int:
    """Number of steps per delay; raises if ``h`` does not divide ``tau``."""
    M = int(round(tau / h))
    if M < 1 or abs(M * h - tau) > 1e-12 * max(1.0, tau):
        raise ValueError(f"step h = {h} does not divide the delay tau = {tau}")
    return M


def _blown_up(value) -> bool:
    value = np.abs(value)
    return not np.all(np.isfinite(value)) or bool(np.any(value > BLOWUP_THRESHOLD))


def integrate_reduced(system: ReducedSystem, y0, t_end: float, h: float) -> Trajectory:
    """Classical RK4 for ``y' = A y + F_N(y)`` with a fixed step."""
    n = _step_count(t_end, h)
    times = np.arange(n + 1) * h
    Y = np.empty((n + 1, system.N))
    y = np.array(y0, dtype=float)
    if y.shape != (system.N,):
        raise ValueError(f"y0 must have shape ({system.N},), got {y.shape}")
    Y[0] = y
    f = system.rhs
    for k in range(n):
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        Y[k + 1] = y
        if _blown_up(y):
            raise BlowUpError(times[k + 1], Trajectory(times[:k + 2], Y[:k + 2], "reduced", system.tau))
    return Trajectory(times, Y, "reduced", system.tau)


def integrate_dde_reference(spec: DDESpec, phi, t_end: float, h: float) -> Trajectory:
    """Method-of-steps RK4 for the DDE itself, started from history ``phi``."""
    phi: HistorySegment = as_history(phi)
    tau = spec.tau
    M = delay_steps(tau, h)
    n = _step_count(t_end, h)
    times = np.arange(n + 1) * h

    hist_grid = phi(-tau + np.arange(M + 1) * h)
    hist_grid[M] = phi.value_at_zero
    hist_mid = phi(-tau + (np.arange(M) + 0.5) * h)

    x = np.empty(n + 1)
    m = np.empty(n + 1)
    x[0] = phi.value_at_zero
    # cells[i] integrates over [-tau + i h, -tau + (i + 1) h]
    cells = [(h / 6.0) * (hist_grid[i] + 4.0 * hist_mid[i] + hist_grid[i + 1]) for i in range(M)]
    z = math.fsum(cells)
    f = spec.rhs

    def hermite_mid(d: int) -> float:
        return 0.5 * (x[d] + x[d + 1]) + 0.125 * h * (m[d] - m[d + 1])

    for k in range(n):
        d = k - M
        if d < 0:
            xd0, xd_mid, xd1 = hist_grid[k], hist_mid[k], hist_grid[k + 1]
        else:
            xd0, xd_mid, xd1 = x[d], hermite_mid(d), x[d + 1]

        xk = x[k]
        k1 = f(xk, xd0, z)
        m[k] = k1
        j1 = xk - xd0
        x2, z2 = xk + 0.5 * h * k1, z + 0.5 * h * j1
        k2 = f(x2, xd_mid, z2)
        j2 = x2 - xd_mid
        x3, z3 = xk + 0.5 * h * k2, z + 0.5 * h * j2
        k3 = f(x3, xd_mid, z3)
        j3 = x3 - xd_mid
        x4, z4 = xk + h * k3, z + h * j3
        k4 = f(x4, xd1, z4)
        j4 = x4 - xd1
        x_next = xk + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        z_pred = z + (h / 6.0) * (j1 + 2.0 * j2 + 2.0 * j3 + j4)
        x[k + 1] = x_next

        if _blown_up(x_next):
            raise BlowUpError(times[k + 1], Trajectory(times[:k + 2], x[:k + 2].copy(), "reference", tau,
                                                       m[:k + 2].copy()))

        # Provisional end slope for the Simpson midpoint; recomputed with the exact window next step.
        m_end = f(x_next, xd1, z_pred)
        cells.append((h / 2.0) * (xk + x_next) + (h * h / 12.0) * (k1 - m_end))
        z = math.fsum(cells[k + 1:k + 1 + M])

    m[n] = f(x[n], x[n - M] if n >= M else hist_grid[n], z)
    return Trajectory(times, x, "reference", tau, m)


def compare(reduced: Trajectory, reference: Trajectory) -> ErrorReport:
    """Sup-norm and RMS of ``x_N(t) - x(t)`` over a shared time grid."""
    if reduced.times.shape != reference.times.shape or not np.allclose(
            reduced.times, reference.times, rtol=0.0, atol=1e-12):
        raise ValueError("trajectories are not on the same time grid")
    err = np.abs(reduced.x - reference.x)
    return ErrorReport(float(err.max()), float(np.sqrt(np.mean(err**2))))


def convergence_sweep(spec: DDESpec, phi, dims, t_end: float, h: float, quad_order: int | None = None):
    """Reduced-vs-reference errors for several dimensions ``N``, keyed by ``N``.

    The reference run is shared across all dimensions.
    """
    phi = as_history(phi)
    reference = integrate_dde_reference(spec, phi, t_end, h)
    rule = gauss_legendre(quad_order) if quad_order else None
    reports = {}
    for N in sorted(dims):
        system = assemble_matrix(spec, N)
        y0 = project_history(phi, N, spec.tau, rule)
        reports[N] = compare(integrate_reduced(system, y0, t_end, h), reference)
    return reports
