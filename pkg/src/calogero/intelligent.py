"""Robertson-Schrodinger intelligent states and their analytic solutions.

A state saturates the Robertson-Schrodinger inequality for the Hermitian
pair (A, B) exactly when it solves

    ((1 - lam) A+ + (1 + lam) A-) |psi> = 2 z |psi>,   Re(lam) > 0.

The Fock construction is a three-term recurrence in the coefficients; the
closed forms in the two analytic representations are an exp * 1F1 product
and a two-factor binomial, both checked here against the differential
equations they must satisfy by finite-difference residual oracles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import (
    DEFAULT_TRUNCATION,
    FockVector,
    LadderMatrices,
    LEVEL_SPACING,
    ModelParams,
    normalize,
    overlap,
)
from .specfun import SeriesControl, hyp1f1, log_gamma

__all__ = [
    "ISLabel",
    "VarianceReport",
    "is_state_fock",
    "variance_report",
    "predicted_variances",
    "squeezing_domain_check",
    "phi_bg",
    "phi_kp",
    "ode_residual_bg",
    "ode_residual_kp",
    "analytic_vs_fock_fidelity",
]

# Residual floor guarding division by zero for degenerate states.
_RESIDUAL_FLOOR = 1e-300
# Finite-difference step for the residual oracles.  For second derivatives
# the roundoff term eps/h^2 forces h well above 1e-5; 1e-3 with the
# Richardson-refined (five-point) stencils keeps both error sources near 1e-10.
_FD_STEP = 1e-3
# Relative magnitude below which trailing Taylor-map coefficients are treated
# as series-cancellation noise and clipped.
_TAYLOR_NOISE_CLIP = 1e-7


def squeezing_domain_check(lam: complex) -> bool:
    """True iff Re(lam) > 0, the normalizable squeezing domain.

    Equivalent to |sqrt((lam-1)/(lam+1))| < 1, i.e. the analytic solutions
    stay inside their convergence region.
    """
    return complex(lam).real > 0.0


@dataclass(frozen=True)
class ISLabel:
    """Label (z, lam, beta) of an intelligent state; requires Re(lam) > 0."""

    z: complex
    lam: complex
    beta: float = 0.0

    def __post_init__(self):
        z = complex(self.z)
        lam = complex(self.lam)
        if not all(map(math.isfinite, (z.real, z.imag, lam.real, lam.imag))):
            raise ValueError("label entries must be finite")
        if not squeezing_domain_check(lam):
            raise ValueError(
                f"squeezing parameter must satisfy Re(lam) > 0, got {lam}"
            )
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "beta", float(self.beta))


@dataclass(frozen=True)
class VarianceReport:
    """All first and second moments of (A, B) for one state, both sides of
    the Robertson-Schrodinger inequality, and the saturation residual.

    ``commutator_mean`` is the directly computed <[A, B]> from the truncated
    matrices; ``rs_rhs`` is built from it, never from any operator identity.
    """

    mean_A: float
    mean_B: float
    var_A: float
    var_B: float
    mean_H: float
    mean_F: float
    covariance: float
    commutator_mean: complex
    rs_lhs: float
    rs_rhs: float
    saturation_residual: float


def is_state_fock(
    label: ISLabel, params: ModelParams, trunc: int = DEFAULT_TRUNCATION
) -> FockVector:
    """Intelligent state by the three-term coefficient recurrence.

    c_{n+1} = [2 z c_n - (1 - lam) sqrt(n(n+e0)) e^{-2 i beta} c_{n-1}]
              / [(1 + lam) sqrt((n+1)(n+1+e0)) e^{+2 i beta}],

    seeded c_0 = 1, c_{-1} = 0, then normalized over the truncated basis.
    Setting lam = 1 reproduces the lowering-operator eigenstate.
    """
    if trunc < 4:
        raise ValueError("truncation must be >= 4")
    e0 = params.e0
    beta = label.beta
    lam = label.lam
    z = label.z
    down_phase = cmath.exp(-1j * beta * LEVEL_SPACING)
    up_phase = cmath.exp(+1j * beta * LEVEL_SPACING)
    c = np.zeros(trunc, dtype=complex)
    c[0] = 1.0
    prev = 0.0 + 0.0j
    for n in range(trunc - 1):
        amp_n = math.sqrt(n * (n + e0))
        amp_np1 = math.sqrt((n + 1) * (n + 1 + e0))
        c[n + 1] = (2.0 * z * c[n] - (1.0 - lam) * amp_n * down_phase * prev) / (
            (1.0 + lam) * amp_np1 * up_phase
        )
        prev = c[n]
    return normalize(FockVector(c, params))


def variance_report(state: FockVector, matrices: LadderMatrices) -> VarianceReport:
    """Moments and saturation data computed directly from the matrices."""
    v = state.coeffs
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError(f"variance_report requires a unit-norm state, norm = {nrm}")
    av = matrices.op_a @ v
    bv = matrices.op_b @ v
    mean_a = float(np.vdot(v, av).real)
    mean_b = float(np.vdot(v, bv).real)
    var_a = float(np.vdot(av, av).real) - mean_a * mean_a
    var_b = float(np.vdot(bv, bv).real) - mean_b * mean_b
    mean_h = float(np.vdot(v, matrices.hamiltonian @ v).real)
    w_ab = complex(np.vdot(av, bv))  # <A B>
    covariance = w_ab.real - mean_a * mean_b
    commutator_mean = w_ab - w_ab.conjugate()  # <AB> - <BA>
    rv = matrices.raising @ v
    lv = matrices.lowering @ v
    var_plus = complex(np.vdot(v, matrices.raising @ rv)) - complex(np.vdot(v, rv)) ** 2
    var_minus = complex(np.vdot(v, matrices.lowering @ lv)) - complex(np.vdot(v, lv)) ** 2
    mean_f = (1j * (var_plus - var_minus)).real
    rs_lhs = var_a * var_b
    rs_rhs = 0.25 * (abs(commutator_mean) ** 2 + mean_f * mean_f)
    residual = abs(rs_lhs - rs_rhs) / max(rs_rhs, _RESIDUAL_FLOOR)
    return VarianceReport(
        mean_A=mean_a,
        mean_B=mean_b,
        var_A=var_a,
        var_B=var_b,
        mean_H=mean_h,
        mean_F=mean_f,
        covariance=covariance,
        commutator_mean=commutator_mean,
        rs_lhs=rs_lhs,
        rs_rhs=rs_rhs,
        saturation_residual=residual,
    )


def predicted_variances(
    report: VarianceReport, lam: complex, basis: str = "hamiltonian"
) -> tuple[float, float]:
    """Closed-form variance predictions for an intelligent state:

        var_A = |lam|/2 * sqrt(M^2 + <F>^2),
        var_B = 1/(2 |lam|) * sqrt(M^2 + <F>^2),

    with M = <H> (``basis='hamiltonian'``) or M = |<[A, B]>|
    (``basis='commutator'``).  The two choices differ because the computed
    commutator is H + 1, not H; only the commutator variant saturates the
    inequality, and the ratio var_A / var_B = |lam|^2 holds for both.
    """
    if basis == "hamiltonian":
        m = report.mean_H
    elif basis == "commutator":
        m = abs(report.commutator_mean)
    else:
        raise ValueError(f"basis must be 'hamiltonian' or 'commutator', got {basis!r}")
    mag = math.sqrt(m * m + report.mean_F * report.mean_F)
    a = abs(complex(lam))
    if a == 0.0:
        raise ValueError("lam must be nonzero")
    return 0.5 * a * mag, 0.5 * mag / a


def _squeeze_root(lam: complex) -> complex:
    """Principal branch of sqrt((lam-1)/(lam+1)); |s| < 1 iff Re(lam) > 0."""
    lam = complex(lam)
    if lam == -1.0:
        raise ValueError("lam = -1 is excluded")
    return cmath.sqrt((lam - 1.0) / (lam + 1.0))


def _check_analytic_lam(lam: complex) -> complex:
    lam = complex(lam)
    if not squeezing_domain_check(lam):
        raise ValueError(f"analytic solutions require Re(lam) > 0, got {lam}")
    if lam == 1.0 or lam == -1.0:
        raise ValueError("closed forms are defined for lam != +/- 1")
    return lam


def phi_bg(
    zprime: complex,
    lam: complex,
    z: complex,
    params: ModelParams,
    sign: int = -1,
    control: SeriesControl | None = None,
) -> complex:
    """Entire-function solution in the eigenstate-of-lowering representation:

        phi(z) = exp(-+ s z) 1F1(e0/2 +- z'/(s (1+lam)); e0; +- 2 s z),

    s = sqrt((lam-1)/(lam+1)).  The two sign choices are equal by the
    Kummer transformation; pass ``sign=+1`` or ``sign=-1`` to pick a route
    (the series is evaluated directly so the two really are independent).
    The z' scale 1/(s(1+lam)) and the argument scale 2s are the unique
    values for which the representation's second-order eigen-ODE is
    satisfied; the residual oracle ode_residual_bg pins them.
    """
    lam = _check_analytic_lam(lam)
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    e0 = params.e0
    s = _squeeze_root(lam)
    shift = zprime / (s * (1.0 + lam))
    if sign == -1:
        return cmath.exp(-s * z) * hyp1f1(
            0.5 * e0 + shift, e0, 2.0 * s * z, control=control, kummer=False
        )
    return cmath.exp(s * z) * hyp1f1(
        0.5 * e0 - shift, e0, -2.0 * s * z, control=control, kummer=False
    )


def phi_kp(
    zetaprime: complex,
    lam: complex,
    zeta: complex,
    params: ModelParams,
) -> complex:
    """Disk-representation solution:

        phi(zeta) = (1 + s zeta)^{p+} (1 - s zeta)^{p-},
        p_{+-} = -e0/2 +- zeta'/(s (1 + lam)),

    on principal branches; s (1+lam) equals sqrt(lam^2 - 1) up to branch
    choice, and the product is invariant under s -> -s.  lam = 1 collapses
    to exp(zeta' zeta).
    """
    lam = complex(lam)
    if not squeezing_domain_check(lam):
        raise ValueError(f"analytic solutions require Re(lam) > 0, got {lam}")
    if abs(zeta) >= 1.0:
        raise ValueError(f"need |zeta| < 1, got |zeta| = {abs(zeta)}")
    if lam == 1.0:
        return cmath.exp(complex(zetaprime) * complex(zeta))
    e0 = params.e0
    s = _squeeze_root(lam)
    u_plus = 1.0 + s * zeta
    u_minus = 1.0 - s * zeta
    if u_plus == 0.0 or u_minus == 0.0:
        raise ValueError("phi_kp is singular at s * zeta = +/- 1")
    shift = zetaprime / (s * (1.0 + lam))
    p_plus = -0.5 * e0 + shift
    p_minus = -0.5 * e0 - shift
    return u_plus**p_plus * u_minus**p_minus


def _derivatives_fd(func, x0: complex, h: float) -> tuple[complex, complex, complex]:
    """Value, first and second derivative by five-point central stencils
    (one Richardson refinement of the three-point differences)."""
    if h <= 0.0 or x0 + h == x0:
        raise ValueError("finite-difference step underflowed")
    fp2 = func(x0 + 2 * h)
    fp1 = func(x0 + h)
    f0 = func(x0)
    fm1 = func(x0 - h)
    fm2 = func(x0 - 2 * h)
    d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h)
    d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h)
    return f0, d1, d2


def ode_residual_bg(
    zprime: complex,
    lam: complex,
    z: complex,
    params: ModelParams,
    func=None,
    step: float = _FD_STEP,
) -> float:
    """Relative residual of the second-order eigen-ODE

        (1+lam)(z phi'' + e0 phi') + ((1-lam) z - 2 z') phi = 0

    at the point z, for phi = phi_bg by default (pass ``func`` to probe
    another candidate, e.g. a deliberately perturbed one).
    """
    lam = _check_analytic_lam(lam)
    e0 = params.e0
    if func is None:
        func = lambda w: phi_bg(zprime, lam, w, params)  # noqa: E731
    f0, d1, d2 = _derivatives_fd(func, complex(z), step)
    t1 = (1.0 + lam) * z * d2
    t2 = (1.0 + lam) * e0 * d1
    t3 = ((1.0 - lam) * z - 2.0 * zprime) * f0
    scale = abs(t1) + abs(t2) + abs(t3)
    return abs(t1 + t2 + t3) / max(scale, _RESIDUAL_FLOOR)


def ode_residual_kp(
    zetaprime: complex,
    lam: complex,
    zeta: complex,
    params: ModelParams,
    func=None,
    step: float = _FD_STEP,
) -> float:
    """Relative residual of the first-order eigen-ODE in the disk variable:

        [(1-lam) zeta^2 + (1+lam)] phi' + [(1-lam) e0 zeta - 2 zeta'] phi = 0.

    Both zeta-coefficients carry (1-lam): they descend from the raising
    part of the eigen relation, whose first-order realization is
    zeta^2 d/dzeta + e0 zeta.
    """
    lam = complex(lam)
    if not squeezing_domain_check(lam):
        raise ValueError(f"analytic solutions require Re(lam) > 0, got {lam}")
    e0 = params.e0
    if func is None:
        func = lambda w: phi_kp(zetaprime, lam, w, params)  # noqa: E731
    f0, d1, _ = _derivatives_fd(func, complex(zeta), step)
    t1 = ((1.0 - lam) * zeta * zeta + (1.0 + lam)) * d1
    t2 = ((1.0 - lam) * e0 * zeta - 2.0 * zetaprime) * f0
    scale = abs(t1) + abs(t2)
    return abs(t1 + t2) / max(scale, _RESIDUAL_FLOOR)


def _convolve_series(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.size
    out = np.zeros(n, dtype=complex)
    for k in range(n):
        out[k] = np.dot(a[: k + 1], b[k::-1])
    return out


def _taylor_bg(zprime: complex, lam: complex, e0: float, n_terms: int) -> np.ndarray:
    """Taylor coefficients of the analytic intelligent state in the
    representation whose lowering realization is z d^2/dz^2 + (e0+1) d/dz,
    the one that intertwines exactly with the Fock matrices (ledger D6).
    Solution: exp(-s z) 1F1((e0+1)/2 + z'/(s(1+lam)); e0+1; 2 s z).
    """
    b = e0 + 1.0
    if lam == 1.0:
        # 0F1 limit: t_{n+1} = t_n z' / ((n+1)(n+b-... )); direct product form.
        t = np.zeros(n_terms, dtype=complex)
        t[0] = 1.0
        for n in range(n_terms - 1):
            t[n + 1] = t[n] * zprime / ((n + 1.0) * (n + 1.0 + e0))
        return t
    s = _squeeze_root(lam)
    a = 0.5 * b + zprime / (s * (1.0 + lam))
    exp_coeff = np.zeros(n_terms, dtype=complex)
    hyp_coeff = np.zeros(n_terms, dtype=complex)
    exp_coeff[0] = 1.0
    hyp_coeff[0] = 1.0
    for k in range(n_terms - 1):
        exp_coeff[k + 1] = exp_coeff[k] * (-s) / (k + 1.0)
        hyp_coeff[k + 1] = hyp_coeff[k] * (a + k) * 2.0 * s / ((b + k) * (k + 1.0))
    return _convolve_series(exp_coeff, hyp_coeff)


def _taylor_kp(zetaprime: complex, lam: complex, e0: float, n_terms: int) -> np.ndarray:
    """Taylor coefficients of the disk-representation solution with the
    intertwining-consistent exponent (e0+1)/2 (ledger D7):
    (1 + s zeta)^{p+} (1 - s zeta)^{p-}, p_{+-} = -(e0+1)/2 +- zeta'/(s(1+lam)).
    """
    if lam == 1.0:
        t = np.zeros(n_terms, dtype=complex)
        t[0] = 1.0
        for k in range(n_terms - 1):
            t[k + 1] = t[k] * zetaprime / (k + 1.0)
        return t
    s = _squeeze_root(lam)
    shift = zetaprime / (s * (1.0 + lam))
    p_plus = -0.5 * (e0 + 1.0) + shift
    p_minus = -0.5 * (e0 + 1.0) - shift
    plus_coeff = np.zeros(n_terms, dtype=complex)
    minus_coeff = np.zeros(n_terms, dtype=complex)
    plus_coeff[0] = 1.0
    minus_coeff[0] = 1.0
    for k in range(n_terms - 1):
        plus_coeff[k + 1] = plus_coeff[k] * (p_plus - k) * s / (k + 1.0)
        minus_coeff[k + 1] = minus_coeff[k] * (p_minus - k) * (-s) / (k + 1.0)
    return _convolve_series(plus_coeff, minus_coeff)


def _clip_taylor_noise(c: np.ndarray, floor: float = _TAYLOR_NOISE_CLIP) -> np.ndarray:
    """Zero every coefficient past the first quiet pair.

    The exp*1F1 and binomial products cancel, so mapped coefficients decay
    to a noise valley and then grow again; everything past the valley is
    roundoff and must not reach the Gamma-weighted Fock map.
    """
    mags = np.abs(c)
    peak = mags.max()
    if peak == 0.0:
        return c
    out = c.copy()
    for n in range(8, c.size - 1):
        if max(mags[n], mags[n + 1]) < floor * peak:
            out[n:] = 0.0
            break
    return out


def analytic_vs_fock_fidelity(
    label: ISLabel,
    params: ModelParams,
    trunc: int = DEFAULT_TRUNCATION,
    representation: str = "bg",
) -> float:
    """Overlap magnitude between the closed-form analytic solution and the
    recurrence-built Fock state; approximately 1 when both are right.

    The analytic solution is expanded in monomials (numerical Taylor
    coefficients of the exp*1F1 or binomial product), mapped to Fock
    amplitudes through the representation kernel, normalized, and compared
    with is_state_fock.
    """
    if representation not in ("bg", "kp"):
        raise ValueError("representation must be 'bg' or 'kp'")
    e0 = params.e0
    fock = is_state_fock(label, params, trunc)
    n_terms = min(trunc, 80)
    if representation == "bg":
        taylor = _taylor_bg(label.z, label.lam, e0, n_terms)
        log_kernel = np.array(
            [
                0.5 * (log_gamma(n + 1.0) + log_gamma(n + 1.0 + e0))
                for n in range(n_terms)
            ]
        )
        mapped = taylor * np.exp(log_kernel)
    else:
        taylor = _taylor_kp(label.z, label.lam, e0, n_terms)
        log_kernel = np.array(
            [
                -0.5 * (log_gamma(e0 + 1.0 + n) - log_gamma(e0 + 1.0) - log_gamma(n + 1.0))
                for n in range(n_terms)
            ]
        )
        mapped = taylor * np.exp(log_kernel)
    if not np.all(np.isfinite(mapped.view(float))):
        raise RuntimeError("Taylor-coefficient extraction did not converge")
    mapped = _clip_taylor_noise(mapped)
    phases = np.exp(-1j * LEVEL_SPACING * label.beta * np.arange(n_terms))
    padded = np.zeros(trunc, dtype=complex)
    padded[:n_terms] = mapped * phases
    analytic = normalize(FockVector(padded, params))
    return abs(overlap(analytic, fock))
