"""Built-in DDE models.

The centerpiece is the Suarez-Schopf delayed oscillator for ENSO::

    T'(t) = T(t) - alpha T(t - tau) - T(t)^3,    0 < alpha < 1

which is reduced in the variable ``x = T - T_plus`` about the warm
equilibrium ``T_plus = sqrt(1 - alpha)``::

    x' = (1 - 3 T_plus^2) x - alpha x(t - tau) - 3 T_plus x^2 - x^3
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .reduction import ZERO, DDESpec, PolynomialNonlinearity, load_spec

DEFAULT_ALPHA = 0.75
# Free parameter of the demos; alpha is the one fixed by the literature example.
DEFAULT_TAU = 2.0


@dataclass(frozen=True)
class SuarezSchopfParams:
    alpha: float = DEFAULT_ALPHA
    tau: float = DEFAULT_TAU

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.tau > 0.0:
            raise ValueError(f"tau must be positive, got {self.tau}")

    @property
    def t_plus(self) -> float:
        return math.sqrt(1.0 - self.alpha)

    @property
    def fixed_points(self) -> tuple[float, float, float]:
        """``(T_0, T_plus, T_minus)``."""
        return 0.0, self.t_plus, -self.t_plus


def suarez_schopf_nonlinearity(alpha: float = DEFAULT_ALPHA) -> PolynomialNonlinearity:
    """``F(x) = -3 T_plus x^2 - x^3`` of the perturbed equation."""
    t_plus = SuarezSchopfParams(alpha).t_plus
    return PolynomialNonlinearity([(-3.0 * t_plus, (2, 0, 0)), (-1.0, (3, 0, 0))])


def suarez_schopf_spec(params: SuarezSchopfParams) -> DDESpec:
    """Perturbed Suarez-Schopf model about ``T_plus``."""
    t_plus = params.t_plus
    return DDESpec(
        a=1.0 - 3.0 * t_plus**2,
        b=-params.alpha,
        c=0.0,
        tau=params.tau,
        nonlinearity=suarez_schopf_nonlinearity(params.alpha),
        name="suarez-schopf",
    )


def suarez_schopf_original_spec(params: SuarezSchopfParams) -> DDESpec:
    """The unperturbed equation in ``T`` (used to check the change of variables)."""
    return DDESpec(1.0, -params.alpha, 0.0, params.tau,
                   PolynomialNonlinearity([(-1.0, (3, 0, 0))]), "suarez-schopf-original")


def to_original_variable(x, params: SuarezSchopfParams):
    """``T = x + T_plus``."""
    return x + params.t_plus


def to_perturbed_variable(T, params: SuarezSchopfParams):
    """``x = T - T_plus``."""
    return T - params.t_plus


def builtin_nonlinearity(name: str, **params) -> PolynomialNonlinearity:
    """Named nonlinearities for the ``{"builtin": name}`` model-file form."""
    if name == "zero":
        return ZERO
    if name == "suarez-schopf":
        return suarez_schopf_nonlinearity(params.get("alpha", DEFAULT_ALPHA))
    if name == "cubic":
        return PolynomialNonlinearity([(-1.0, (3, 0, 0))])
    raise ValueError(f"unknown builtin nonlinearity {name!r}; available: zero, suarez-schopf, cubic")


def _suarez_schopf(alpha: float = DEFAULT_ALPHA, tau: float = DEFAULT_TAU, **_) -> DDESpec:
    return suarez_schopf_spec(SuarezSchopfParams(alpha, tau))


def _suarez_schopf_original(alpha: float = DEFAULT_ALPHA, tau: float = DEFAULT_TAU, **_) -> DDESpec:
    return suarez_schopf_original_spec(SuarezSchopfParams(alpha, tau))


def _linear_discrete(a: float = 0.0, b: float = -1.0, tau: float = DEFAULT_TAU, **_) -> DDESpec:
    return DDESpec(a, b, 0.0, tau, ZERO, "linear-discrete-delay")


def _linear_distributed(c: float = -1.0, tau: float = DEFAULT_TAU, **_) -> DDESpec:
    return DDESpec(0.0, 0.0, c, tau, ZERO, "linear-distributed")


def _custom_from_json(path: str, tau: float | None = None, **_) -> DDESpec:
    return load_spec(path, tau=tau)


_REGISTRY: dict[str, Callable[..., DDESpec]] = {
    "suarez-schopf": _suarez_schopf,
    "suarez-schopf-original": _suarez_schopf_original,
    "linear-discrete-delay": _linear_discrete,
    "linear-distributed": _linear_distributed,
    "custom-from-json": _custom_from_json,
}


def builtin_registry() -> dict[str, Callable[..., DDESpec]]:
    """Name -> factory. Factories take keyword parameters and ignore ones they do not use."""
    return dict(_REGISTRY)


def get_model(name: str, **params) -> DDESpec:
    """Build a registered model by name, dropping ``None`` parameters."""
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown model {name!r}; available: {', '.join(_REGISTRY)}") from None
    return factory(**{k: v for k, v in params.items() if v is not None})
