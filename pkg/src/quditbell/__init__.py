"""Quantifying violation of the original Bell inequality by two-qudit states.

The package provides the generalized Gell-Mann representation of traceless
qudit observables, correlation matrices of two-qudit states, certificates of
perfect correlations/anticorrelations, and a constrained maximizer of the
three-correlator Bell combination that verifies the 3/2 quantum bound.
"""

from .bellmax import (
    BellMaxReport,
    LhvCheckReport,
    LhvModel,
    MaximizeOptions,
    bell_expression,
    bell_expression_bloch,
    chsh_optimal_settings,
    chsh_value,
    exhaustive_qubit_max,
    lhv_monte_carlo,
    maximize_bell,
    optimal_a,
    sample_lhv_model,
    scalar_bound,
    write_trace_csv,
)
from .bloch import (
    BlochVector,
    QuditObservable,
    bloch_ball_radius,
    from_bloch,
    haar_unitary,
    in_bloch_region,
    in_pm1_shell,
    make_diag_pm1,
    make_offdiag_imag_pm1,
    make_offdiag_real_pm1,
    operator_norm,
    random_pm1_observable,
    to_bloch,
)
from .errors import (
    CertificationError,
    DimensionCapError,
    DimensionError,
    QuditBellError,
    ValidationError,
)
from .gellmann import GellMannBasis, build_basis, flat_index, index_label
from .perfectness import (
    ClassMembership,
    PerfectnessCertificate,
    SignWitness,
    WitnessSearchOptions,
    bell_condition_spectral_form,
    certify_state,
    check_bell_condition,
    correlation_spectrum,
    find_perfect_observables,
)
from .states import (
    CorrelationMatrix,
    TwoQuditState,
    bloch_expectation,
    correlation_matrix,
    ghz,
    is_symmetric,
    maximally_mixed,
    product_expectation,
)

__version__ = "0.1.0"

__all__ = [
    "BellMaxReport",
    "BlochVector",
    "CertificationError",
    "ClassMembership",
    "CorrelationMatrix",
    "DimensionCapError",
    "DimensionError",
    "GellMannBasis",
    "LhvCheckReport",
    "LhvModel",
    "MaximizeOptions",
    "PerfectnessCertificate",
    "QuditBellError",
    "QuditObservable",
    "SignWitness",
    "TwoQuditState",
    "ValidationError",
    "WitnessSearchOptions",
    "bell_condition_spectral_form",
    "bell_expression",
    "bell_expression_bloch",
    "bloch_ball_radius",
    "bloch_expectation",
    "build_basis",
    "certify_state",
    "check_bell_condition",
    "chsh_optimal_settings",
    "chsh_value",
    "correlation_matrix",
    "correlation_spectrum",
    "exhaustive_qubit_max",
    "find_perfect_observables",
    "flat_index",
    "from_bloch",
    "ghz",
    "haar_unitary",
    "in_bloch_region",
    "in_pm1_shell",
    "index_label",
    "is_symmetric",
    "lhv_monte_carlo",
    "make_diag_pm1",
    "make_offdiag_imag_pm1",
    "make_offdiag_real_pm1",
    "maximally_mixed",
    "maximize_bell",
    "operator_norm",
    "optimal_a",
    "product_expectation",
    "random_pm1_observable",
    "sample_lhv_model",
    "scalar_bound",
    "to_bloch",
    "write_trace_csv",
]
