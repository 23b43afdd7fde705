"""Coherent and Robertson-Schrodinger intelligent states of the two-body
Calogero model, built in a truncated Fock basis and verified against
brute-force oracles."""

from .model import (
    FockVector,
    LadderMatrices,
    ModelParams,
    e0_from_eta,
    energy,
    evolve,
    expectation,
    f_phase,
    ladder_matrices,
    normalize,
    overlap,
    wavefunction,
)
from .coherent import (
    BGLabel,
    KPLabel,
    analytic_F,
    analytic_G,
    bg_measure_weight,
    bg_norm_constant,
    bg_state,
    kp_measure_weight,
    kp_state_closed,
    kp_state_oracle,
    laplace_map,
)
from .intelligent import (
    ISLabel,
    VarianceReport,
    analytic_vs_fock_fidelity,
    is_state_fock,
    ode_residual_bg,
    ode_residual_kp,
    phi_bg,
    phi_kp,
    predicted_variances,
    squeezing_domain_check,
    variance_report,
)
from .verify import DiscrepancyRecord, QuadratureSpec, VerificationSuite

__version__ = "0.1.0"
