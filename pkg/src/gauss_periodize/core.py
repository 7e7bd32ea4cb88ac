"""Series parameters, coefficient vectors and the two ways to compute them.

The Poisson route evaluates the closed form

    a_n = (2*sqrt(pi)/tau_m) * exp(-(pi*n/tau_m)**2)

and the Fourier route integrates the periodized Gaussian against
``cos(pi*n*t/tau_m)`` over one period with the trapezoidal rule. For a
sufficiently converged quadrature the two agree to rounding.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvalidParameterError, OrderCapExceeded

TWO_SQRT_PI = 2.0 * math.sqrt(math.pi)
MIN_NORMAL = sys.float_info.min
EPS = sys.float_info.epsilon
#: ln(1/MIN_NORMAL); exponents above this push exp() into the subnormal range.
LN_INV_MIN_NORMAL = -math.log(MIN_NORMAL)

_PI_LO = 1.2246467991473532e-16  # pi - float(pi)
_SPLITTER = 134217729.0


def _two_prod(a, b):
    p = a * b
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLITTER * b
    bh = c - (c - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def scaled_exponent(n, tau_m):
    """Return ``(pi*n/tau_m)**2`` as an unevaluated double-double ``(hi, lo)``.

    ``n`` may be a scalar or an integer array. The exponent reaches ~700
    near the order cap, so forming it in plain binary64 would cost a few
    hundred ulps in ``exp``; the compensated form keeps ``exp(-(hi + lo))``
    at about one ulp.
    """
    n = np.asarray(n, dtype=np.float64)
    p_hi, p_lo = _two_prod(n, math.pi)
    p_lo = p_lo + n * _PI_LO
    q = p_hi / tau_m
    s_hi, s_lo = _two_prod(q, tau_m)
    q_lo = ((p_hi - s_hi) - s_lo + p_lo) / tau_m
    q, q_lo = _fast_two_sum(q, q_lo)
    x_hi, x_lo = _two_prod(q, q)
    x_lo = x_lo + 2.0 * q * q_lo
    return _fast_two_sum(x_hi, x_lo)


def gaussian_factor(n, tau_m):
    """``exp(-(pi*n/tau_m)**2)`` to about one ulp, elementwise."""
    hi, lo = scaled_exponent(n, tau_m)
    e = np.exp(-hi)
    return e - e * lo


def _check_tau(tau_m):
    tau_m = float(tau_m)
    if not (math.isfinite(tau_m) and tau_m > 0.0):
        raise InvalidParameterError(f"tau_m must be positive and finite, got {tau_m!r}")
    return tau_m


def order_cap(tau_m: float) -> int:
    """Largest ``n`` whose Gaussian factor ``exp(-(pi*n/tau_m)**2)`` is normal.

    Starts from ``floor(tau_m*sqrt(ln(1/MIN_NORMAL))/pi)`` and nudges the
    estimate by at most a step where rounding puts it on the wrong side of
    the threshold.
    """
    tau_m = _check_tau(tau_m)
    n = int(math.floor(tau_m * math.sqrt(LN_INV_MIN_NORMAL) / math.pi))

    def representable(k):
        rough = math.pi * k / tau_m
        if rough > math.sqrt(LN_INV_MIN_NORMAL) + 1.0:
            return False
        hi, lo = scaled_exponent(k, tau_m)
        return float(hi) + float(lo) <= LN_INV_MIN_NORMAL

    while representable(n + 1):
        n += 1
    while n > 0 and not representable(n):
        n -= 1
    return n


@dataclass(frozen=True)
class SeriesParams:
    """Half-period ``tau_m`` and truncation order ``n_max`` of one approximation."""

    tau_m: float
    n_max: int

    def __post_init__(self):
        tau_m = _check_tau(self.tau_m)
        if not math.isfinite(TWO_SQRT_PI / tau_m):
            raise InvalidParameterError(f"tau_m={tau_m!r} is too small; a_0 overflows")
        if isinstance(self.n_max, bool) or int(self.n_max) != self.n_max:
            raise InvalidParameterError(f"n_max must be an integer, got {self.n_max!r}")
        n_max = int(self.n_max)
        if n_max < 0:
            raise InvalidParameterError(f"n_max must be >= 0, got {n_max}")
        cap = order_cap(tau_m)
        if n_max > cap:
            raise OrderCapExceeded(n_max, cap, tau_m)
        object.__setattr__(self, "tau_m", tau_m)
        object.__setattr__(self, "n_max", n_max)


@dataclass(frozen=True, eq=False)
class CosineSeries:
    """Coefficients ``a_0..a_N`` of ``-a_0/2 + sum_n a_n cos(pi*n*t/tau_m)``.

    ``coeffs`` is stored as a read-only float64 array.
    """

    tau_m: float
    coeffs: np.ndarray

    def __post_init__(self):
        tau_m = _check_tau(self.tau_m)
        coeffs = np.array(self.coeffs, dtype=np.float64)
        if coeffs.ndim != 1 or coeffs.shape[0] == 0:
            raise InvalidParameterError("coeffs must be a non-empty 1-D vector")
        if not np.all(np.isfinite(coeffs)):
            raise InvalidParameterError("coeffs must be finite")
        coeffs.flags.writeable = False
        object.__setattr__(self, "tau_m", tau_m)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n_max(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def params(self) -> SeriesParams:
        return SeriesParams(self.tau_m, self.n_max)

    def __eq__(self, other):
        if not isinstance(other, CosineSeries):
            return NotImplemented
        return self.tau_m == other.tau_m and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None


def poisson_coefficients(params: SeriesParams) -> CosineSeries:
    """Closed-form coefficients ``a_n = a_0 exp(-(pi n/tau_m)^2)``, ``a_0 = 2 sqrt(pi)/tau_m``."""
    a0 = TWO_SQRT_PI / params.tau_m
    n = np.arange(params.n_max + 1)
    coeffs = a0 * gaussian_factor(n, params.tau_m)
    coeffs[0] = a0
    if np.any(coeffs <= 0.0):  # unreachable below the order cap
        raise OrderCapExceeded(params.n_max, order_cap(params.tau_m), params.tau_m)
    return CosineSeries(params.tau_m, coeffs)


@dataclass(frozen=True)
class QuadratureConfig:
    """Panel-doubling policy for the trapezoidal Fourier route.

    ``image_count`` is the number of Gaussian images summed on each side of
    the central one; ``0`` integrates the bare Gaussian.
    """

    initial_panels: int = 64
    rel_tol: float = 1e-14
    max_doublings: int = 20
    image_count: int = 3

    def __post_init__(self):
        p = self.initial_panels
        if isinstance(p, bool) or int(p) != p or p < 8 or (int(p) & (int(p) - 1)):
            raise InvalidParameterError(
                f"initial_panels must be a power of two >= 8, got {p!r}")
        if not (math.isfinite(self.rel_tol) and self.rel_tol >= 8 * EPS):
            raise InvalidParameterError(
                f"rel_tol must be >= 8*machine epsilon, got {self.rel_tol!r}")
        if int(self.max_doublings) != self.max_doublings or self.max_doublings < 1:
            raise InvalidParameterError(
                f"max_doublings must be a positive integer, got {self.max_doublings!r}")
        if int(self.image_count) != self.image_count or self.image_count < 0:
            raise InvalidParameterError(
                f"image_count must be a non-negative integer, got {self.image_count!r}")
        object.__setattr__(self, "initial_panels", int(p))
        object.__setattr__(self, "rel_tol", float(self.rel_tol))
        object.__setattr__(self, "max_doublings", int(self.max_doublings))
        object.__setattr__(self, "image_count", int(self.image_count))


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of the Fourier route. Check ``converged`` before trusting ``series``."""

    series: CosineSeries
    converged: bool
    panels: int
    last_change: float
    rel_tol: float = field(repr=False)


def trapezoid_cosine_coefficients(tau_m, n_max, panels, image_count):
    """One trapezoidal estimate of ``(1/tau_m) int_{-tau_m}^{tau_m} P(t) cos(pi n t/tau_m) dt``.

    Nodes are ``t_m = m*h`` for ``m = -panels/2..panels/2``; phases
    ``pi*n*m*h/tau_m`` are reduced as integers mod ``panels`` before the
    cosine, so mirrored nodes give bit-identical weights. Each row is
    summed with ``math.fsum``.
    """
    half = panels // 2
    m = np.arange(-half, half + 1)
    h = 2.0 * tau_m / panels
    values = _kernels.periodized_gaussian(m * h, tau_m, image_count)
    values[0] *= 0.5
    values[-1] *= 0.5
    scale = 2.0 / panels  # h/tau_m, exact for power-of-two panels
    out = np.empty(n_max + 1)
    for n in range(n_max + 1):
        r = (n * m + half) % panels - half
        row = np.cos(np.pi * (2.0 * r / panels)) * values
        out[n] = math.fsum(row) * scale
    return out


def fourier_coefficients_quadrature(params: SeriesParams,
                                    q: QuadratureConfig = QuadratureConfig()) -> QuadratureResult:
    """Fourier cosine coefficients of the periodized Gaussian by trapezoidal quadrature.

    Panels double from ``q.initial_panels`` until successive coefficient
    vectors differ by at most ``q.rel_tol`` times their largest entry, or
    until ``q.max_doublings`` doublings are spent. The last estimate is
    returned either way.
    """
    panels = q.initial_panels
    prev = trapezoid_cosine_coefficients(params.tau_m, params.n_max, panels, q.image_count)
    change = math.inf
    converged = False
    for _ in range(q.max_doublings):
        panels *= 2
        cur = trapezoid_cosine_coefficients(params.tau_m, params.n_max, panels, q.image_count)
        change = float(np.max(np.abs(cur - prev)))
        prev = cur
        if change <= q.rel_tol * float(np.max(np.abs(cur))):
            converged = True
            break
    return QuadratureResult(CosineSeries(params.tau_m, prev), converged, panels, change, q.rel_tol)
