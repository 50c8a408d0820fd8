"""Generalized Hermite polynomials: exact construction, ray-method
asymptotics, and complex zeros."""

from .asymptotic import (
    AsymptoticParams,
    RayPoint,
    TBranch,
    amplitude_g,
    caustic_radius,
    eikonal_residual,
    h_inner,
    h_outer,
    h_outer_direct,
    mu,
    phase_f,
    ray_grid,
    rho,
    t_inner,
    t_outer,
    tau,
)
from .errors import (
    CausticSingularity,
    ConvergenceError,
    DomainError,
    GhpError,
    MalformedPolynomial,
)
from .exact import (
    FamilyParams,
    build_diffdiff,
    build_explicit,
    build_recurrence,
    coefficient,
    genfun_check,
    ode_residual,
    omega_indicator,
    symmetry_check,
    value_at_zero,
)
from .logcomplex import GUARD_BITS, LogComplex, eval_log_complex, normalize_angle
from .poly import SparsePoly, eval_exact, poly_from_json_dict, poly_to_json_dict
from .roots import Decomposition, Orbit, RootSet, all_roots, decompose, positive_real_roots

__version__ = "0.1.0"

__all__ = [
    "AsymptoticParams",
    "CausticSingularity",
    "ConvergenceError",
    "Decomposition",
    "DomainError",
    "FamilyParams",
    "GUARD_BITS",
    "GhpError",
    "LogComplex",
    "MalformedPolynomial",
    "Orbit",
    "RayPoint",
    "RootSet",
    "SparsePoly",
    "TBranch",
    "all_roots",
    "amplitude_g",
    "build_diffdiff",
    "build_explicit",
    "build_recurrence",
    "caustic_radius",
    "coefficient",
    "decompose",
    "eikonal_residual",
    "eval_exact",
    "eval_log_complex",
    "genfun_check",
    "h_inner",
    "h_outer",
    "h_outer_direct",
    "mu",
    "normalize_angle",
    "ode_residual",
    "omega_indicator",
    "phase_f",
    "poly_from_json_dict",
    "poly_to_json_dict",
    "positive_real_roots",
    "ray_grid",
    "rho",
    "symmetry_check",
    "t_inner",
    "t_outer",
    "tau",
    "value_at_zero",
]
