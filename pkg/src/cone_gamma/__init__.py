"""Gamma-matrix factorizations and local zeta functions on homogeneous cones.

The package computes the finite phase matrices that couple local zeta
integrals over the open orbits of a rank-r homogeneous cone to their duals,
factors them into labeled rotation/diagonal products, checks the determinant
and diagonalization corollaries, and validates everything numerically
against closed-form and quadrature-based zeta integrals on a small catalog
of cones (orthants, symmetric 2x2 matrices, a rank-3 Vinberg cone, and a
rank-3x4 structure-constant example without a matrix chart).
"""

from .cone_model import (
    CatalogEntry,
    ConeStructure,
    CoordinateChart,
    catalog,
    catalog_names,
    check_condition_41,
    derived_vectors,
    exact_int_inverse,
    from_descriptor,
    measure_exponents,
    new_cone,
    orbit_signs,
    tau,
    tau_star,
    to_descriptor,
)
from .gamma_matrices import (
    build_A,
    build_C,
    build_S,
    det_formula_check,
    eigenvalue_diag,
    fe_alpha,
    gamma_matrix_tilde,
    gindikin_gamma,
    log_gamma_prefactor,
    theta_from_cone,
)
from .sign_algebra import digit_order, digit_weights, hadamard, k_vector, kron, permutation_W, sign_order
from .special_functions import PoleError, c_half, gamma, gamma_c_identity_residual, log_gamma, s_half
from .structured_factors import (
    Factor,
    FactorProduct,
    decomposition_rhs,
    diag_D,
    epsilon_factor,
    generator_X,
    lambda_diag,
    rotation_P,
    script_A,
)
from .verification import (
    ConditionError,
    ResidualReport,
    matrix_residual,
    read_reports,
    run_completion_suite,
    run_det_suite,
    run_prop31_suite,
    run_thm32_suite,
    sample_alpha,
    sample_s_for_cone,
    sample_theta,
    verify_completion,
    verify_det,
    verify_prop31,
    verify_thm32,
    write_reports,
)
from .zeta_numeric import (
    LocalZetaValue,
    TestFunction,
    completion_residual,
    distribution_matrix,
    basis_change_residual,
    fe_distribution_residual,
    fe_residual,
    fourier,
    function_from_json,
    gaussian,
    hermite_product,
    local_zeta_closed,
    local_zeta_quadrature,
    make_test_function,
    measure_invariance_check,
    mellin_half,
    parse_complex,
    parse_function,
    psi,
    quadrature_sample_s,
    run_fe_config,
    sample_fe_s,
    run_fe_suite,
    run_invariance_suite,
    run_quadrature_suite,
    sign_vector_from_distribution,
    zeta_distribution,
    zeta_distribution_direct,
    zeta_distribution_vector,
    zeta_local_vector,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
