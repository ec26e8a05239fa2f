"""Galerkin-Koornwinder approximation of scalar delay differential equations."""
from .derivative_coeffs import (
    DerivativeTable,
    build_matrix,
    build_rhs,
    rescaled_derivative_coeffs,
    solve_coeffs,
)
from .integrators import (
    BlowUpError,
    ErrorReport,
    Trajectory,
    compare,
    convergence_sweep,
    integrate_dde_reference,
    integrate_reduced,
)
from .koornwinder import (
    PolynomialBasis,
    QuadratureRule,
    gauss_legendre,
    inner_product_E,
    koornwinder_eval,
    koornwinder_eval_rescaled,
    koornwinder_norm_sq,
    legendre_eval,
)
from .models import (
    SuarezSchopfParams,
    builtin_registry,
    get_model,
    suarez_schopf_spec,
    to_original_variable,
    to_perturbed_variable,
)
from .reduction import (
    DDESpec,
    HistorySegment,
    PolynomialNonlinearity,
    ReducedSystem,
    assemble_matrix,
    assemble_nonlinearity,
    project_history,
    reconstruct_field,
    reconstruct_state,
)

__version__ = "0.1.0"
