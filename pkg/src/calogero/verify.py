"""Brute-force verification of the global identities.

Resolution-of-identity moment matrices for both coherent families,
the Laplace-transform link between the two analytic representations,
temporal stability, the ladder commutator, and the discrepancy ledger:
every point where a closed formula had to be corrected to agree with the
Fock-space oracles, with the numerical evidence attached.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi

from .coherent import (
    BGLabel,
    KPLabel,
    analytic_G,
    bg_measure_weight,
    bg_state,
    kp_state_closed,
    kp_state_oracle,
    laplace_map,
)
from .intelligent import ISLabel, is_state_fock, ode_residual_kp, phi_kp
from .model import (
    DEFAULT_TRUNCATION,
    FockVector,
    ModelParams,
    evolve,
    ladder_matrices,
    normalize,
    wavefunction,
)
from .specfun import log_gamma

__all__ = [
    "QuadratureSpec",
    "DiscrepancyRecord",
    "check_identity_bg",
    "check_identity_kp",
    "check_laplace",
    "check_temporal_stability",
    "check_commutator",
    "VerificationSuite",
]

BG_DIAG_TOL = 1e-6
BG_OFFDIAG_TOL = 1e-10
KP_DIAG_TOL = 1e-8
KP_OFFDIAG_TOL = 1e-10
LAPLACE_ROW_TOL = 1e-8
TEMPORAL_TOL = 1e-12
COMMUTATOR_TOL = 1e-10
NODE_DOUBLING_TOL = 1e-8


@dataclass(frozen=True)
class QuadratureSpec:
    """Radial x angular product rule for the identity integrals.

    The cutoff must leave the n = nmax radial moment a negligible tail:
    r^{2n+e0+1} K_{e0}(2r) is still ~1e-4 at r = 20 for n = 8, so the
    default reaches r = 30, where the tail is below 1e-12.
    """

    radial_nodes: int = 320
    angular_nodes: int = 64
    radial_cutoff: float = 30.0
    scheme: str = "gauss-radial/uniform-angular"

    def __post_init__(self):
        if self.radial_nodes < 8 or self.angular_nodes < 8:
            raise ValueError("need at least 8 nodes per direction")
        if self.radial_cutoff <= 0.0:
            raise ValueError("radial cutoff must be positive")


@dataclass(frozen=True)
class DiscrepancyRecord:
    """One corrected formula: where it lives, what was printed, what the
    oracles force instead, and the numbers that justify the change."""

    record_id: str
    location: str
    printed: str
    adopted: str
    evidence: dict = field(default_factory=dict)


def _bg_radial_magnitudes(r: np.ndarray, e0: float, nmax: int, trunc: int) -> np.ndarray:
    """Normalized |c_n(r)| of the lowering-eigenstate family, rows n <= nmax."""
    mags = np.zeros((trunc, r.size))
    mags[0] = 1.0
    for n in range(trunc - 1):
        mags[n + 1] = mags[n] * r / math.sqrt((n + 1) * (n + 1 + e0))
    norms = np.sqrt((mags * mags).sum(axis=0))
    return mags[: nmax + 1] / norms


def _angular_factor(nmax: int, angular_nodes: int) -> np.ndarray:
    """(2 pi / M) sum_j e^{i (n - m) phi_j}; equals 2 pi delta_{nm} exactly
    for |n - m| < M."""
    phi = 2.0 * math.pi * np.arange(angular_nodes) / angular_nodes
    diff = np.subtract.outer(np.arange(nmax + 1), np.arange(nmax + 1))
    return (2.0 * math.pi / angular_nodes) * np.exp(
        1j * diff[..., None] * phi
    ).sum(axis=-1)


def check_identity_bg(
    nmax: int,
    spec: QuadratureSpec,
    params: ModelParams,
    trunc: int = DEFAULT_TRUNCATION,
) -> np.ndarray:
    """Moment matrix M_nm = int dmu(z) <n|z,beta><z,beta|m> over the radial
    measure (2/pi) I_{e0}(2r) K_{e0}(2r) r dr dphi; identity when the
    measure is right."""
    if not 0 <= nmax <= 12:
        raise ValueError("nmax must lie in [0, 12]")
    e0 = params.e0
    x, w = leggauss(spec.radial_nodes)
    r = 0.5 * (x + 1.0) * spec.radial_cutoff
    rw = 0.5 * spec.radial_cutoff * w
    weight = np.array([bg_measure_weight(ri, params) for ri in r])
    coeff = _bg_radial_magnitudes(r, e0, nmax, trunc)
    radial = np.einsum("ik,jk,k->ij", coeff, coeff, weight * rw)
    ang = _angular_factor(nmax, spec.angular_nodes)
    k = np.arange(nmax + 1)
    beta_phase = np.exp(-2j * params.beta * np.subtract.outer(k, k))
    return radial * ang * beta_phase


def check_identity_kp(
    nmax: int,
    spec: QuadratureSpec,
    params: ModelParams,
) -> np.ndarray:
    """Moment matrix of the displacement family over the unit disk with
    weight (e0-1)/pi / (1-|zeta|^2)^2.

    Radial direction substitutes t = |zeta|^2 and uses a Gauss-Jacobi rule
    with weight (1-t)^{e0-2}, which treats the t -> 1 behaviour exactly.
    The family's closed-form normalization is exact, so no truncation
    enters the coefficients.
    """
    if not 0 <= nmax <= 12:
        raise ValueError("nmax must lie in [0, 12]")
    e0 = params.e0
    xj, wj = roots_jacobi(spec.radial_nodes, e0 - 2.0, 0.0)
    t = 0.5 * (xj + 1.0)
    tw = wj * 0.5 ** (e0 - 1.0)
    k = np.arange(nmax + 1)
    log_g = np.array(
        [0.5 * (log_gamma(e0 + n) - log_gamma(e0) - log_gamma(n + 1.0)) for n in k]
    )
    g = np.exp(log_g)
    half_pow = t[None, :] ** (0.5 * k[:, None])  # t^{n/2}
    radial = np.einsum("ik,jk,k->ij", half_pow, half_pow, tw)
    ang = _angular_factor(nmax, spec.angular_nodes)
    beta_phase = np.exp(-2j * params.beta * np.subtract.outer(k, k))
    prefactor = (e0 - 1.0) / (2.0 * math.pi)
    return prefactor * np.outer(g, g) * radial * ang * beta_phase


def check_laplace(
    nmax: int,
    params: ModelParams,
    zetas: tuple[float, ...] = (0.2, 0.5, 0.8),
    beta: float = 0.0,
) -> np.ndarray:
    """Table of laplace_map(n, zeta) / analytic_G(n, zeta).

    Rows constant in zeta confirm the transform maps monomials to
    monomials; the n-dependence of the constant is the D5 normalization
    finding (the ratio is 1/sqrt(e0+n))."""
    if not 0 <= nmax <= 10:
        raise ValueError("nmax must lie in [0, 10]")
    out = np.zeros((nmax + 1, len(zetas)), dtype=complex)
    for n in range(nmax + 1):
        for j, zeta in enumerate(zetas):
            out[n, j] = laplace_map(n, zeta, beta, params) / analytic_G(
                n, zeta, beta, params
            )
    return out


def check_temporal_stability(
    z: complex,
    beta: float,
    t_grid: tuple[float, ...],
    params: ModelParams,
    trunc: int = DEFAULT_TRUNCATION,
) -> dict:
    """Max coefficientwise deviation of evolve vs relabel.

    For lowering-operator eigenstates the deviation is a roundoff-level
    number.  Intelligent states are evolved too and reported only: they
    relabel up to a global phase, which is recorded separately, not
    asserted.
    """
    bg_dev = 0.0
    for t in t_grid:
        evolved = evolve(bg_state(BGLabel(z, beta), params, trunc), t)
        relabeled = bg_state(BGLabel(z, beta + t), params, trunc)
        bg_dev = max(bg_dev, float(np.max(np.abs(evolved.coeffs - relabeled.coeffs))))
    label = ISLabel(z=z, lam=2.0, beta=beta)
    is_dev = 0.0
    is_dev_aligned = 0.0
    for t in t_grid:
        evolved = evolve(is_state_fock(label, params, trunc), t)
        relabeled = is_state_fock(ISLabel(z=z, lam=2.0, beta=beta + t), params, trunc)
        diff = float(np.max(np.abs(evolved.coeffs - relabeled.coeffs)))
        phase = np.vdot(relabeled.coeffs, evolved.coeffs)
        phase = phase / abs(phase) if abs(phase) > 0 else 1.0
        aligned = float(np.max(np.abs(evolved.coeffs - phase * relabeled.coeffs)))
        is_dev = max(is_dev, diff)
        is_dev_aligned = max(is_dev_aligned, aligned)
    return {
        "bg_max_deviation": bg_dev,
        "intelligent_max_deviation": is_dev,
        "intelligent_phase_aligned_deviation": is_dev_aligned,
    }


def check_commutator(params: ModelParams, trunc: int = DEFAULT_TRUNCATION) -> DiscrepancyRecord:
    """Compare diag([A-, A+]) against e_n and e_n + 1 below the truncation
    edge; the coefficients give e_n + 1 exactly."""
    if trunc < 3:
        raise ValueError("truncation must be >= 3")
    mats = ladder_matrices(params, trunc)
    comm = mats.lowering @ mats.raising - mats.raising @ mats.lowering
    diag = np.real(np.diag(comm))[: trunc - 1]
    n = np.arange(trunc - 1)
    e_n = 2.0 * n + params.e0
    dev_en = float(np.max(np.abs(diag - e_n)))
    dev_en_plus_1 = float(np.max(np.abs(diag - (e_n + 1.0))))
    return DiscrepancyRecord(
        record_id="D8",
        location="commutator of the Hermitian pair built from the ladder operators",
        printed="[A, B] = i [A+, A-] = i H",
        adopted="diag([A-, A+]) = e_n + 1; every moment uses the computed "
        "commutator mean, never the operator identity",
        evidence={
            "max_dev_vs_en": dev_en,
            "max_dev_vs_en_plus_1": dev_en_plus_1,
            "adopted_ok": dev_en_plus_1 < COMMUTATOR_TOL,
        },
    )


def _legendre_rule(a: float, b: float, n: int):
    x, w = leggauss(n)
    return 0.5 * (x + 1.0) * (b - a) + a, 0.5 * (b - a) * w


def _wavefunction_printed(n: int, x: np.ndarray, params: ModelParams) -> np.ndarray:
    """Eigenfunction formula without the x^{e0 - 1/2} factor."""
    from .specfun import laguerre

    e0 = params.e0
    norm = math.exp(0.5 * (math.log(2.0) + log_gamma(n + 1.0) - log_gamma(n + e0)))
    sign = -1.0 if n % 2 else 1.0
    return sign * norm * laguerre(n, e0 - 1.0, x * x) * np.exp(-0.5 * x * x)


def _kp_closed_shifted(label: KPLabel, params: ModelParams, trunc: int) -> FockVector:
    """Displacement closed form in the index-shifted family
    sqrt(Gamma(e0+1+n) / (Gamma(e0+1) n!)) zeta^n (1-|zeta|^2)^{(e0+1)/2};
    this is the one the matrix-exponential oracle actually produces."""
    e0 = params.e0
    zeta = label.zeta
    c = np.zeros(trunc, dtype=complex)
    c[0] = (1.0 - abs(zeta) ** 2) ** (0.5 * (e0 + 1.0))
    for n in range(trunc - 1):
        c[n + 1] = c[n] * zeta * math.sqrt((e0 + 1.0 + n) / (n + 1.0))
    return normalize(FockVector(c, params))


def _monomial_conjugated_ladders(e0: float, nmax: int, shifted: bool) -> tuple[np.ndarray, np.ndarray]:
    """Fock ladder matrices conjugated into the monomial basis of the
    analytic representation (beta = 0).

    BG kernel: k_n = 1 / sqrt(n! Gamma(n+1+e0)) (``shifted`` unused there).
    KP kernel: g_n = sqrt(Gamma(c+n) / (Gamma(c) n!)) with c = e0+1 when
    ``shifted`` else e0.  Returns (lowering, raising) in monomial space.
    """
    dim = nmax + 1
    n = np.arange(dim - 1, dtype=float)
    amp = np.sqrt((n + 1.0) * (n + 1.0 + e0))
    raising = np.zeros((dim, dim))
    raising[np.arange(1, dim), np.arange(dim - 1)] = amp
    lowering = raising.T.copy()
    c = e0 + 1.0 if shifted else e0
    log_kernel = np.array(
        [0.5 * (log_gamma(c + k) - log_gamma(c) - log_gamma(k + 1.0)) for k in range(dim)]
    )
    kernel = np.exp(log_kernel)
    return (
        np.diag(kernel) @ lowering @ np.diag(1.0 / kernel),
        np.diag(kernel) @ raising @ np.diag(1.0 / kernel),
    )


def _bg_monomial_conjugated(e0: float, nmax: int) -> tuple[np.ndarray, np.ndarray]:
    dim = nmax + 1
    n = np.arange(dim - 1, dtype=float)
    amp = np.sqrt((n + 1.0) * (n + 1.0 + e0))
    raising = np.zeros((dim, dim))
    raising[np.arange(1, dim), np.arange(dim - 1)] = amp
    lowering = raising.T.copy()
    log_kernel = np.array(
        [-0.5 * (log_gamma(k + 1.0) + log_gamma(k + 1.0 + e0)) for k in range(dim)]
    )
    kernel = np.exp(log_kernel)
    return (
        np.diag(kernel) @ lowering @ np.diag(1.0 / kernel),
        np.diag(kernel) @ raising @ np.diag(1.0 / kernel),
    )


def _bg_analytic_lowering(e0_like: float, nmax: int) -> np.ndarray:
    """Matrix of z d^2/dz^2 + c d/dz on monomials: z^n -> n(n-1+c) z^{n-1}."""
    dim = nmax + 1
    mat = np.zeros((dim, dim))
    for n in range(1, dim):
        mat[n - 1, n] = n * (n - 1.0 + e0_like)
    return mat


def _kp_analytic_raising(coeff: float, nmax: int, first_order: bool) -> np.ndarray:
    """zeta^2 d/dzeta + coeff zeta (first order) or
    zeta^2 d^2/dzeta^2 + coeff zeta (second order) on monomials."""
    dim = nmax + 1
    mat = np.zeros((dim, dim))
    for n in range(dim - 1):
        mat[n + 1, n] = (n + coeff) if first_order else (n * (n - 1.0) + coeff)
    return mat


def _kp_analytic_lowering(nmax: int) -> np.ndarray:
    dim = nmax + 1
    mat = np.zeros((dim, dim))
    for n in range(1, dim):
        mat[n - 1, n] = n
    return mat


class VerificationSuite:
    """Runs every global check for one parameter set and assembles the
    discrepancy ledger D1 .. D8.  Deterministic: identical configuration
    yields identical summaries."""

    def __init__(
        self,
        params: ModelParams,
        quad: QuadratureSpec | None = None,
        trunc: int = DEFAULT_TRUNCATION,
        nmax: int = 8,
    ):
        self.params = params
        self.quad = quad or QuadratureSpec()
        self.trunc = trunc
        self.nmax = nmax
        self.checks: dict = {}
        self._records: list[DiscrepancyRecord] = []
        self._ran = False

    # -- individual checks -------------------------------------------------

    def _run_identity_bg(self):
        spec = self.quad
        m = check_identity_bg(self.nmax, spec, self.params, self.trunc)
        doubled = check_identity_bg(
            self.nmax,
            QuadratureSpec(
                radial_nodes=2 * spec.radial_nodes,
                angular_nodes=spec.angular_nodes,
                radial_cutoff=spec.radial_cutoff,
                scheme=spec.scheme,
            ),
            self.params,
            self.trunc,
        )
        diag_dev = float(np.max(np.abs(np.diag(m).real - 1.0)))
        off = m - np.diag(np.diag(m))
        off_dev = float(np.max(np.abs(off)))
        herm_dev = float(np.max(np.abs(m - m.conj().T)))
        node_shift = float(np.max(np.abs(m - doubled)))
        self.checks["identity_bg"] = {
            "passed": bool(diag_dev < BG_DIAG_TOL and off_dev < BG_OFFDIAG_TOL),
            "tolerance": {"diagonal": BG_DIAG_TOL, "off_diagonal": BG_OFFDIAG_TOL},
            "max_diagonal_deviation": diag_dev,
            "max_off_diagonal": off_dev,
            "hermiticity_deviation": herm_dev,
            "node_doubling_shift": node_shift,
            "diagonal": [float(v) for v in np.diag(m).real],
        }

    def _run_identity_kp(self):
        m = check_identity_kp(self.nmax, self.quad, self.params)
        diag_dev = float(np.max(np.abs(np.diag(m).real - 1.0)))
        off = m - np.diag(np.diag(m))
        off_dev = float(np.max(np.abs(off)))
        self.checks["identity_kp"] = {
            "passed": bool(diag_dev < KP_DIAG_TOL and off_dev < KP_OFFDIAG_TOL),
            "tolerance": {"diagonal": KP_DIAG_TOL, "off_diagonal": KP_OFFDIAG_TOL},
            "max_diagonal_deviation": diag_dev,
            "max_off_diagonal": off_dev,
            "diagonal": [float(v) for v in np.diag(m).real],
        }

    def _run_laplace(self):
        nmax = min(self.nmax, 10)
        ratios = check_laplace(nmax, self.params)
        ratios_beta = check_laplace(nmax, self.params, beta=0.7)
        row_dev = float(
            np.max(np.abs(ratios - ratios.mean(axis=1, keepdims=True)))
        )
        e0 = self.params.e0
        n = np.arange(nmax + 1)
        normalized = ratios.real.mean(axis=1) * np.sqrt(e0 + n)
        model_dev = float(np.max(np.abs(normalized - 1.0)))
        beta_dev = float(np.max(np.abs(ratios - ratios_beta)))
        self.checks["laplace"] = {
            "passed": bool(row_dev < LAPLACE_ROW_TOL and model_dev < 1e-10),
            "tolerance": {"row_constancy": LAPLACE_ROW_TOL},
            "row_constancy_deviation": row_dev,
            "ratio_times_sqrt_e0_plus_n_deviation": model_dev,
            "beta_independence_deviation": beta_dev,
            "ratios_real": [[float(v) for v in row] for row in ratios.real],
        }

    def _run_temporal(self):
        result = check_temporal_stability(
            0.7 + 0.3j, 0.2, (0.1, 1.0, math.pi), self.params, self.trunc
        )
        self.checks["temporal_stability"] = {
            "passed": bool(result["bg_max_deviation"] < TEMPORAL_TOL),
            "tolerance": {"bg": TEMPORAL_TOL},
            **result,
        }

    def _run_commutator(self):
        record = check_commutator(self.params, self.trunc)
        self.checks["commutator"] = {
            "passed": bool(record.evidence["adopted_ok"]),
            "tolerance": {"diagonal": COMMUTATOR_TOL},
            "max_dev_vs_en": record.evidence["max_dev_vs_en"],
            "max_dev_vs_en_plus_1": record.evidence["max_dev_vs_en_plus_1"],
        }
        return record

    # -- discrepancy evidence ----------------------------------------------

    def _record_d1(self) -> DiscrepancyRecord:
        params = self.params
        x, w = _legendre_rule(1e-9, 12.0, 400)
        psi0 = wavefunction(0, x, params)
        psi1 = wavefunction(1, x, params)
        p0 = _wavefunction_printed(0, x, params)
        norm0 = float(np.sum(w * psi0 * psi0))
        norm1 = float(np.sum(w * psi1 * psi1))
        cross = float(np.sum(w * psi0 * psi1))
        printed_norm0 = float(np.sum(w * p0 * p0))
        ok = abs(norm0 - 1.0) < 1e-8 and abs(norm1 - 1.0) < 1e-8 and abs(cross) < 1e-8
        return DiscrepancyRecord(
            record_id="D1",
            location="position-space eigenfunction formula",
            printed="psi_n = (-1)^n sqrt(2 n!/Gamma(n+e0)) L_n^{e0-1}(x^2) e^{-x^2/2}",
            adopted="insert the factor x^{e0-1/2}; with s = e0-1/2 the "
            "centrifugal strength s(s-1)/2 equals eta^2 and the printed "
            "normalization becomes correct",
            evidence={
                "corrected_norm_n0": norm0,
                "corrected_norm_n1": norm1,
                "corrected_overlap_01": cross,
                "printed_norm_n0": printed_norm0,
                "adopted_ok": ok,
            },
        )

    def _record_d2(self) -> DiscrepancyRecord:
        mats = ladder_matrices(self.params, 32)
        printed_b = (mats.raising - mats.lowering) / math.sqrt(2.0)
        printed_dev = float(np.max(np.abs(printed_b - printed_b.conj().T)))
        adopted_dev = float(np.max(np.abs(mats.op_b - mats.op_b.conj().T)))
        return DiscrepancyRecord(
            record_id="D2",
            location="definition of the second Hermitian quadrature operator",
            printed="B = (A+ - A-)/sqrt(2)  (anti-Hermitian as written)",
            adopted="B = (A+ - A-)/(i sqrt(2))",
            evidence={
                "printed_hermiticity_deviation": printed_dev,
                "adopted_hermiticity_deviation": adopted_dev,
                "adopted_ok": adopted_dev < 1e-14,
            },
        )

    def _record_d3(self) -> DiscrepancyRecord:
        from .specfun import bessel_k

        params = self.params
        e0 = params.e0
        x, w = _legendre_rule(1e-9, self.quad.radial_cutoff, 512)
        target = math.exp(log_gamma(1.0) + log_gamma(1.0 + e0))  # n = 0 moment

        def moment(index: float) -> float:
            vals = np.array([bessel_k(index, 2.0 * r) for r in x])
            return float(4.0 * np.sum(w * x ** (e0 + 1.0) * vals))

        adopted_moment = moment(e0)
        printed_moment = moment(0.5 * e0)
        predicted_printed = math.exp(
            log_gamma(0.5 * (e0 + 2.0 + 0.5 * e0))
            + log_gamma(0.5 * (e0 + 2.0 - 0.5 * e0))
        )
        return DiscrepancyRecord(
            record_id="D3",
            location="radial measure closing the lowering-eigenstate identity",
            printed="weight (2/pi) I_{e0}(2r) K_{e0/2}(2r) r",
            adopted="weight (2/pi) I_{e0}(2r) K_{e0}(2r) r; the Mellin moment "
            "4 int r^{e0+2n+1} K_{e0}(2r) dr = Gamma(n+1) Gamma(n+1+e0)",
            evidence={
                "n0_moment_adopted_index": adopted_moment,
                "n0_moment_target": target,
                "n0_moment_printed_index": printed_moment,
                "n0_moment_printed_index_closed_form": predicted_printed,
                "adopted_ok": abs(adopted_moment / target - 1.0) < 1e-8,
            },
        )

    def _record_d4(self) -> DiscrepancyRecord:
        params = self.params
        e0 = params.e0
        trunc = 80
        closed_dev = 0.0
        shifted_dev = 0.0
        for z in (0.3, 0.6j, 0.5 + 0.5j):
            label = KPLabel(z)
            oracle = kp_state_oracle(label, params, trunc)
            closed = kp_state_closed(label, params, trunc)
            shifted = _kp_closed_shifted(label, params, trunc)
            # compare up to a global phase (fix phase on the n = 0 entry)
            def aligned(state):
                c0 = state.coeffs[0]
                return state.coeffs * (abs(c0) / c0 if c0 != 0 else 1.0)

            o = aligned(oracle)
            closed_dev = max(closed_dev, float(np.max(np.abs(aligned(closed) - o))))
            shifted_dev = max(shifted_dev, float(np.max(np.abs(aligned(shifted) - o))))
        # square-root evidence: first coefficient ratio of the closed family
        zeta = 0.4
        g_ratio = analytic_G(1, zeta, 0.0, params) / analytic_G(0, zeta, 0.0, params)
        with_sqrt = zeta * math.sqrt(e0)
        without_sqrt = zeta * e0
        return DiscrepancyRecord(
            record_id="D4",
            location="disk-variable representation of the basis vectors and "
            "the displacement matrix element",
            printed="G_n = zeta^n Gamma(e0+n)/(Gamma(e0) n!) e^{-i beta e_n} "
            "(no square root), displacement element with Gamma(e0+n)",
            adopted="square root adopted so G_n matches the matrix element; "
            "the element itself belongs to the index-(e0) family, while the "
            "displacement oracle exp(zA+ - conj(z)A-)|0> lives in the "
            "index-(e0+1) family (coefficients sqrt(Gamma(e0+1+n)/"
            "(Gamma(e0+1) n!)) zeta^n (1-|zeta|^2)^{(e0+1)/2})",
            evidence={
                "max_coeff_dev_printed_family_vs_oracle": closed_dev,
                "max_coeff_dev_shifted_family_vs_oracle": shifted_dev,
                "g_ratio_n1_over_n0": abs(g_ratio),
                "g_ratio_with_sqrt": with_sqrt,
                "g_ratio_without_sqrt": without_sqrt,
                "adopted_ok": shifted_dev < 1e-10
                and abs(abs(g_ratio) - with_sqrt) < 1e-12,
            },
        )

    def _record_d5(self) -> DiscrepancyRecord:
        laplace = self.checks.get("laplace")
        if laplace is None:
            self._run_laplace()
            laplace = self.checks["laplace"]
        return DiscrepancyRecord(
            record_id="D5",
            location="Laplace-type transform linking the two analytic "
            "representations",
            printed="the transform of F_n is stated to equal G_n",
            adopted="the transform maps F_n to G_n / sqrt(e0 + n): monomial "
            "to monomial (rows constant in zeta), with an n-dependent "
            "normalization reported, not silently absorbed",
            evidence={
                "row_constancy_deviation": laplace["row_constancy_deviation"],
                "ratio_times_sqrt_e0_plus_n_deviation": laplace[
                    "ratio_times_sqrt_e0_plus_n_deviation"
                ],
                "beta_independence_deviation": laplace["beta_independence_deviation"],
                "adopted_ok": laplace["ratio_times_sqrt_e0_plus_n_deviation"] < 1e-10,
            },
        )

    def _record_d6(self) -> DiscrepancyRecord:
        e0 = self.params.e0
        nmax = 20
        low_target, raise_target = _bg_monomial_conjugated(e0, nmax)
        printed = _bg_analytic_lowering(e0, nmax)
        corrected = _bg_analytic_lowering(e0 + 1.0, nmax)
        sub = np.s_[: nmax - 1, : nmax - 1]  # drop truncation-edge rows
        printed_dev = float(np.max(np.abs((printed - low_target)[sub])))
        corrected_dev = float(np.max(np.abs((corrected - low_target)[sub])))
        raising_dev = float(
            np.max(np.abs((raise_target - np.diag(np.ones(nmax), -1))[1:, :-1]))
        )
        return DiscrepancyRecord(
            record_id="D6",
            location="differential realization of the lowering operator on "
            "the entire-function representation",
            printed="A- = z d^2/dz^2 + e0 d/dz  (acts as n(n+e0-1) on z^n)",
            adopted="A- = z d^2/dz^2 + (e0+1) d/dz (acts as n(n+e0), matching "
            "the Fock matrix elements); A+ = z is exact as printed",
            evidence={
                "printed_intertwining_deviation": printed_dev,
                "corrected_intertwining_deviation": corrected_dev,
                "raising_is_multiplication_deviation": raising_dev,
                "adopted_ok": corrected_dev < 1e-10,
            },
        )

    def _record_d7(self) -> DiscrepancyRecord:
        params = self.params
        e0 = params.e0
        nmax = 20
        low_shift, raise_shift = _monomial_conjugated_ladders(e0, nmax, shifted=True)
        low_printed, raise_printed = _monomial_conjugated_ladders(e0, nmax, shifted=False)
        sub_low = np.s_[: nmax - 1, : nmax - 1]
        sub_raise = np.s_[1:, :-1]
        d_dzeta = _kp_analytic_lowering(nmax)
        corrected_raise = _kp_analytic_raising(e0 + 1.0, nmax, first_order=True)
        printed_raise = _kp_analytic_raising(e0, nmax, first_order=False)
        dev_low_shift = float(np.max(np.abs((low_shift - d_dzeta)[sub_low])))
        dev_raise_shift = float(np.max(np.abs((raise_shift - corrected_raise)[sub_raise])))
        dev_low_printed = float(np.max(np.abs((low_printed - d_dzeta)[sub_low])))
        dev_raise_printed = float(
            np.max(np.abs((raise_printed - printed_raise)[sub_raise]))
        )
        # eigen-ODE zeta-coefficient: residual of the closed form under the
        # adopted first-order equation vs the (1+lam) variant
        lam = 2.0
        zeta = 0.4
        zp = 0.5
        adopted_residual = ode_residual_kp(zp, lam, zeta, params)

        def variant(w):
            return phi_kp(zp, lam, w, params)

        from .intelligent import _derivatives_fd

        f0, d1, _ = _derivatives_fd(variant, complex(zeta), 1e-3)
        t1 = ((1.0 - lam) * zeta * zeta + (1.0 + lam)) * d1
        t2 = ((1.0 + lam) * e0 * zeta - 2.0 * zp) * f0
        printed_residual = float(abs(t1 + t2) / (abs(t1) + abs(t2)))
        return DiscrepancyRecord(
            record_id="D7",
            location="first-order differential realization on the disk "
            "representation and its eigen-equation",
            printed="A+ = zeta^2 d^2/dzeta^2 + e0 zeta (second order as "
            "printed, called first order); eigen-ODE zeta-term written with "
            "(1+lam) e0 zeta",
            adopted="A+ = zeta^2 d/dzeta + (e0+1) zeta and A- = d/dzeta on "
            "the index-(e0+1) kernel; eigen-ODE carries (1-lam) e0 zeta, "
            "which the printed two-factor closed form solves",
            evidence={
                "shifted_lowering_deviation": dev_low_shift,
                "shifted_raising_deviation": dev_raise_shift,
                "printed_kernel_lowering_deviation": dev_low_printed,
                "printed_raising_deviation": dev_raise_printed,
                "closed_form_residual_adopted_ode": adopted_residual,
                "closed_form_residual_printed_ode": printed_residual,
                "adopted_ok": dev_low_shift < 1e-10
                and dev_raise_shift < 1e-10
                and adopted_residual < 1e-8,
            },
        )

    # -- driver --------------------------------------------------------------

    def run(self) -> dict:
        self.checks = {}
        self._records = []
        self._run_identity_bg()
        self._run_identity_kp()
        self._run_laplace()
        self._run_temporal()
        d8 = self._run_commutator()
        self._records = [
            self._record_d1(),
            self._record_d2(),
            self._record_d3(),
            self._record_d4(),
            self._record_d5(),
            self._record_d6(),
            self._record_d7(),
            d8,
        ]
        self._ran = True
        return self.summary()

    def discrepancy_report(self) -> list[DiscrepancyRecord]:
        """The D1..D8 ledger; empty before run()."""
        return list(self._records)

    def all_passed(self) -> bool:
        return self._ran and all(c["passed"] for c in self.checks.values())

    def summary(self) -> dict:
        records = [
            {
                "id": r.record_id,
                "location": r.location,
                "printed": r.printed,
                "adopted": r.adopted,
                "evidence": r.evidence,
            }
            for r in self._records
        ]
        return {
            "params": {
                "eta": self.params.eta,
                "beta": self.params.beta,
                "e0": self.params.e0,
                "truncation": self.trunc,
                "nmax": self.nmax,
            },
            "checks": self.checks,
            "discrepancies": records,
        }
