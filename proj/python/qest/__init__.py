"""Quantum multiparameter estimation bounds."""

from ._core import (
    QestError,
    qubit_model,
    qutrit_model,
    generic_model,
    Model,
    qfi_bundle,
    sld_bound,
    gm_bound,
    rld_holevo_bound,
    optimal_covariance,
    projective_fisher,
    pauli_mixture_fisher,
    gm_curve_parametric,
    gm_envelope,
    two_param_objective,
    min_two_param_state_indep,
    holevo_state_indep,
    state_indep_summary,
    verify_gm_attainability,
    euler_rotation_deg,
)

__version__ = "0.1.0"
