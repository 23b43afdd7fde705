"""Scalar special functions needed by the closed-form state expressions.

Generalized Laguerre polynomials, modified Bessel functions of real order,
the confluent hypergeometric function 1F1 (complex a and x), and log-gamma.
Everything is a pure scalar map; callers vectorize.  Conventions follow
DLMF chapters 5, 10, 13 and 18.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceError",
    "RealOrder",
    "SeriesControl",
    "DEFAULT_SERIES_CONTROL",
    "log_gamma",
    "laguerre",
    "bessel_i",
    "bessel_k",
    "hyp1f1",
]

# Crossover to the large-argument expansion of I_nu; validated against the
# ascending series at x = 29, 30, 31 in the test suite.
_I_ASYMPTOTIC_X = 30.0
# Above this x the I_{+nu} / I_{-nu} difference formula for K_nu loses all
# accuracy (the difference is ~ e^{-2x} relative to each term), so the
# e^{-x} expansion takes over.
_K_ASYMPTOTIC_X = 8.0
# Distance to the nearest integer below which K_nu is obtained as the
# average of the two half-offset orders.
_K_INTEGER_DIST = 1e-5
_K_INTEGER_STEP = 1e-6


class ConvergenceError(RuntimeError):
    """A series or quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True)
class RealOrder:
    """A validated real order parameter.

    Rejects NaN/inf at construction; optionally enforces non-negativity.
    """

    value: float
    nonnegative: bool = False

    def __post_init__(self):
        v = float(self.value)
        if not math.isfinite(v):
            raise ValueError(f"order must be finite, got {self.value!r}")
        if self.nonnegative and v < 0.0:
            raise ValueError(f"order must be >= 0, got {v}")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class SeriesControl:
    """Stopping rule for power series: quit after the term magnitude stays
    below ``rel_tol`` times the partial sum for three consecutive terms."""

    max_terms: int = 10_000
    rel_tol: float = 1e-14

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not (0.0 < self.rel_tol < 1.0):
            raise ValueError("rel_tol must be in (0, 1)")


DEFAULT_SERIES_CONTROL = SeriesControl()


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0.

    Relative error below 1e-12 on (0, 1e4); delegates to the platform
    lgamma, which is exact to within a few ulp there.
    """
    if not (isinstance(x, (int, float)) and math.isfinite(x)) or x <= 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^alpha(x) by the stable three-term
    recurrence (n+1) L_{n+1} = (2n+1+alpha-x) L_n - (n+alpha) L_{n-1}.

    Parameters
    ----------
    n : int
        Degree, n >= 0.
    alpha : float
        Weight exponent, alpha > -1.
    x : float or ndarray
        Evaluation point(s).
    """
    if n < 0 or n != int(n):
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    if not (alpha > -1.0):
        raise ValueError(f"alpha must exceed -1, got {alpha!r}")
    n = int(n)
    one = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return one
    prev = one
    cur = (1.0 + alpha) - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def _ascending_i(nu: float, x: float, control: SeriesControl) -> float:
    # I_nu(x) = sum_k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)); all terms positive.
    half = 0.5 * x
    if nu >= 0.0:
        term = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0))
    else:
        # Gamma(1+nu) for nu < 0 changes sign between poles; use gamma directly.
        term = half ** nu / math.gamma(1.0 + nu)
    total = term
    quiet = 0
    q = half * half
    for k in range(1, control.max_terms):
        term *= q / (k * (k + nu))
        total += term
        if abs(term) < control.rel_tol * abs(total):
            quiet += 1
            if quiet == 3:
                return total
        else:
            quiet = 0
    raise ConvergenceError(f"I_nu series did not converge for nu={nu}, x={x}")

def _asymptotic_factor(nu: float, x: float, signed: bool) -> float:
    # DLMF 10.40: series in a_k(nu)/x^k with a_k = prod_j (4 nu^2 - (2j-1)^2)/(k! 8^k);
    # alternating for I_nu, all-plus for K_nu.  Stop at the smallest term.
    mu = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    prev_mag = math.inf
    for k in range(1, 400):
        factor = (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        term *= -factor if signed else factor
        mag = abs(term)
        if mag >= prev_mag:  # divergent tail reached; truncate at the minimum
            break
        total += term
        prev_mag = mag
        if mag < 1e-17 * abs(total):
            break
    return total


def bessel_i(nu: float, x: float, control: SeriesControl | None = None) -> float:
    """Modified Bessel function I_nu(x) for nu >= 0, x >= 0.

    Ascending series below x = 30, large-argument expansion above.
    Raises OverflowError once e^x leaves double range.
    """
    order = RealOrder(nu, nonnegative=True)
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"bessel_i requires x >= 0, got {x!r}")
    control = control or DEFAULT_SERIES_CONTROL
    nu = order.value
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if x <= _I_ASYMPTOTIC_X:
        return _ascending_i(nu, x, control)
    prefactor = math.exp(x) / math.sqrt(2.0 * math.pi * x)  # OverflowError for x > 709
    return prefactor * _asymptotic_factor(nu, x, signed=True)


def _k_from_i_pair(nu: float, x: float, control: SeriesControl) -> float:
    # K_nu = pi/2 (I_{-nu} - I_nu) / sin(pi nu); only safe away from integers
    # and for moderate x (the difference is exponentially small vs each term).
    return (
        0.5
        * math.pi
        * (_ascending_i(-nu, x, control) - _ascending_i(nu, x, control))
        / math.sin(math.pi * nu)
    )


def bessel_k(nu: float, x: float, control: SeriesControl | None = None) -> float:
    """Modified Bessel function K_nu(x) for x > 0; K is even in nu.

    Computed from I_{+nu}, I_{-nu} for non-integer order; near-integer
    orders use the average over nu = m +/- 1e-6 (limit of the reflection
    formula), and x > 8 switches to the e^{-x} expansion.
    """
    RealOrder(nu)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"bessel_k requires x > 0, got {x!r}")
    control = control or DEFAULT_SERIES_CONTROL
    nu = abs(nu)
    if x > _K_ASYMPTOTIC_X:
        prefactor = math.sqrt(0.5 * math.pi / x) * math.exp(-x)
        return prefactor * _asymptotic_factor(nu, x, signed=False)
    nearest = round(nu)
    if abs(nu - nearest) < _K_INTEGER_DIST:
        lo = abs(nearest - _K_INTEGER_STEP)
        hi = nearest + _K_INTEGER_STEP
        return 0.5 * (_k_from_i_pair(lo, x, control) + _k_from_i_pair(hi, x, control))
    return _k_from_i_pair(nu, x, control)


def _hyp1f1_series(a: complex, b: float, x: complex, control: SeriesControl) -> complex:
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    quiet = 0
    for k in range(control.max_terms):
        term *= (a + k) * x / ((b + k) * (k + 1))
        total += term
        if abs(term) < control.rel_tol * abs(total):
            quiet += 1
            if quiet == 3:
                return total
        else:
            quiet = 0
    raise ConvergenceError(
        f"1F1 series did not converge for a={a}, b={b}, x={x} "
        f"within {control.max_terms} terms"
    )


def hyp1f1(
    a: complex,
    b: float,
    x: complex,
    control: SeriesControl | None = None,
    kummer: bool = True,
) -> complex:
    """Confluent hypergeometric function 1F1(a; b; x), complex a and x.

    Power series with term-ratio stopping.  When ``kummer`` is true and
    Re(x) < 0 the reflection 1F1(a;b;x) = e^x 1F1(b-a;b;-x) is applied so
    the series runs on a non-cancelling argument.  ``kummer=False`` forces
    the direct series (used by the identity tests to keep the two routes
    independent).
    """
    bf = float(b)
    if bf <= 0.0 and bf == int(bf):
        raise ValueError(f"b must not be a non-positive integer, got {b!r}")
    control = control or DEFAULT_SERIES_CONTROL
    a = complex(a)
    x = complex(x)
    if kummer and x.real < 0.0:
        return cmath.exp(x) * _hyp1f1_series(bf - a, bf, -x, control)
    return _hyp1f1_series(a, bf, x, control)
