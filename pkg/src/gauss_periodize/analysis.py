"""Error accounting for the truncated cosine series.

Two error sources separate cleanly:

* aliasing: the Gaussian images ``exp(-(t/2 + k*tau_m)**2)``, ``k != 0``,
  that the periodic series silently includes on ``[-tau_m, tau_m]``;
* truncation: the coefficients beyond ``n_max``.

Bounds here are rounded outward by a few ulps so that the floating-point
result stays an upper bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (EPS, TWO_SQRT_PI, QuadratureConfig, SeriesParams, _check_tau,
                   _two_prod, fourier_coefficients_quadrature, gaussian_factor,
                   order_cap, poisson_coefficients)
from .errors import (InvalidParameterError, OutsideValidityInterval,
                     QuadratureNotConverged, UnsatisfiableTarget)

_OUTWARD = 1.0 + 16.0 * EPS
_TINY = math.ulp(0.0)


@dataclass(frozen=True)
class ErrorBudget:
    aliasing_bound: float
    truncation_bound: float
    total: float


@dataclass(frozen=True)
class ResidualSample:
    t: float
    value: float
    k_used: int


def wraparound_residual(t: float, tau_m: float, k_max: int) -> ResidualSample:
    """Sum of the images ``k = +-1..+-k_max`` at ``t``.

    This is the gap between the untruncated cosine series and
    ``exp(-t**2/4)``, less the images beyond ``k_max``.
    """
    tau_m = _check_tau(tau_m)
    t = float(t)
    if not abs(t) <= tau_m:
        raise OutsideValidityInterval(f"|t|={abs(t)!r} exceeds tau_m={tau_m!r}")
    if k_max < 1:
        raise InvalidParameterError(f"k_max must be >= 1, got {k_max!r}")
    h = 0.5 * t
    pairs = []
    for k in range(1, k_max + 1):
        kt = k * tau_m
        pairs.append(math.exp(-(h + kt) ** 2) + math.exp(-(h - kt) ** 2))
    for k in range(1, k_max):
        if not (pairs[k] < pairs[k - 1] or pairs[k - 1] == 0.0):
            raise ArithmeticError(
                f"image terms not decreasing at t={t!r}, k={k + 1}")  # pragma: no cover
    value = 0.0
    for g in reversed(pairs):
        value += g
    return ResidualSample(t, value, k_max)


def residual_on_grid(t, tau_m: float, k_max: int) -> np.ndarray:
    """Vectorized :func:`wraparound_residual` values (no ordering check)."""
    tau_m = _check_tau(tau_m)
    t = np.asarray(t, dtype=np.float64)
    if np.any(~(np.abs(t) <= tau_m)):
        raise OutsideValidityInterval("grid leaves [-tau_m, tau_m]")
    if k_max < 1:
        raise InvalidParameterError(f"k_max must be >= 1, got {k_max!r}")
    h = 0.5 * t
    value = np.zeros_like(t)
    for k in range(k_max, 0, -1):
        kt = k * tau_m
        value = value + (np.exp(-(h + kt) ** 2) + np.exp(-(h - kt) ** 2))
    return value


@dataclass(frozen=True)
class ChainCheck:
    """Result of :func:`check_ordering_chain`.

    ``log_ratios[0]`` is the smallest ``ln(exp(-t^2/4) / image_1)`` over the
    grid and ``log_ratios[k]`` the smallest ``ln(image_k / image_{k+1})``,
    where ``image_k`` is the larger of the two ``+-k`` images. ``violation``
    is ``(t, k)`` for the first failed comparison, with ``k = 0`` meaning
    the central Gaussian against the first image.
    """

    holds: bool
    violation: tuple[float, int] | None
    log_ratios: tuple[float, ...]


def check_ordering_chain(tau_m: float, t_grid, k_max: int) -> ChainCheck:
    """Check ``exp(-t^2/4) > image_1 > image_2 > ... > image_k_max`` pointwise.

    Comparisons are made on exponents, so images that underflow in binary64
    still order correctly. At ``|t| = tau_m`` the central Gaussian and its
    nearest image coincide exactly (both equal ``exp(-tau_m^2/4)``); that
    tie is accepted, every other comparison must be strict.
    """
    tau_m = _check_tau(tau_m)
    t = np.asarray(t_grid, dtype=np.float64).ravel()
    if np.any(~(np.abs(t) <= tau_m)):
        raise OutsideValidityInterval("grid leaves [-tau_m, tau_m]")
    if k_max < 2:
        raise InvalidParameterError(f"k_max must be >= 2, got {k_max!r}")
    half = 0.5 * np.abs(t)
    # exponents[k] = -ln(image_k); image_0 is the central Gaussian
    exponents = [half * half]
    for k in range(1, k_max + 1):
        d = k * tau_m - half
        exponents.append(d * d)
    violation = None
    log_ratios = []
    for k in range(k_max):
        gap = exponents[k + 1] - exponents[k]
        ok = gap > 0.0
        if k == 0:
            ok |= (gap == 0.0) & (np.abs(t) == tau_m)
        log_ratios.append(float(np.min(gap)) if gap.size else math.inf)
        bad = np.flatnonzero(~ok)
        if bad.size and (violation is None or bad[0] < violation[2]):
            violation = (float(t[bad[0]]), k, int(bad[0]))
    if violation is not None:
        violation = violation[:2]
    return ChainCheck(violation is None, violation, tuple(log_ratios))


def aliasing_bound(tau_m: float) -> float:
    """Sup-norm bound on the neglected images over ``[-tau_m, tau_m]``.

    ``2 exp(-tau_m^2/4) / (1 - exp(-tau_m^2/2))``: each ``+-k`` image pair is
    at most ``2 exp(-((k - 1/2) tau_m)^2)``, and the pairs are dominated by a
    geometric series.
    """
    tau_m = _check_tau(tau_m)
    sq_hi, sq_lo = _two_prod(tau_m, tau_m)
    e = math.exp(-0.25 * sq_hi)
    e = e - e * (0.25 * sq_lo)
    bound = 2.0 * e / -math.expm1(-0.5 * sq_hi)
    return bound * _OUTWARD + _TINY


def _tail_bound(tau_m: float, n_max: int) -> float:
    nxt = n_max + 1
    a_next = TWO_SQRT_PI / tau_m * float(gaussian_factor(nxt, tau_m))
    x = (math.pi / tau_m) ** 2 * (2 * n_max + 3)
    if not x > 0.0:
        raise ArithmeticError(f"tail ratio is not below one (x={x!r})")
    return a_next / -math.expm1(-x) * _OUTWARD + 4.0 * _TINY


def truncation_tail_bound(params: SeriesParams) -> float:
    """Upper bound on ``sum_{n > n_max} a_n``.

    The ratio ``a_{n+1}/a_n = exp(-pi^2 (2n+1)/tau_m^2)`` shrinks with ``n``,
    so the tail is dominated by ``a_{N+1} / (1 - r)`` with ``r`` the first
    omitted ratio.
    """
    cap = order_cap(params.tau_m)
    if params.n_max + 1 > cap:
        raise InvalidParameterError(
            f"n_max + 1 = {params.n_max + 1} exceeds order cap {cap}")
    return _tail_bound(params.tau_m, params.n_max)


def error_budget(params: SeriesParams) -> ErrorBudget:
    """Aliasing plus truncation bound for ``params``.

    Valid up to ``n_max = order_cap``; at the cap the omitted tail is below
    the normal range and the bound is evaluated without the cap check.
    """
    alias = aliasing_bound(params.tau_m)
    trunc = _tail_bound(params.tau_m, params.n_max)
    return ErrorBudget(alias, trunc, alias + trunc)


def select_order(tau_m: float, epsilon: float) -> SeriesParams:
    """Smallest ``n_max`` whose truncation bound fits in ``epsilon - aliasing_bound``.

    Raises :class:`UnsatisfiableTarget` when the aliasing floor (or the
    order cap) makes ``epsilon`` unreachable at this half-period.
    """
    tau_m = _check_tau(tau_m)
    epsilon = float(epsilon)
    if not (math.isfinite(epsilon) and epsilon > 0.0):
        raise InvalidParameterError(f"epsilon must be positive and finite, got {epsilon!r}")
    alias = aliasing_bound(tau_m)
    budget = max(epsilon - alias, 0.0)
    hi = max(order_cap(tau_m) - 1, 0)
    if _tail_bound(tau_m, hi) > budget:
        raise UnsatisfiableTarget(epsilon, alias, alias + _tail_bound(tau_m, hi), tau_m)
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if _tail_bound(tau_m, mid) <= budget:
            hi = mid
        else:
            lo = mid + 1
    return SeriesParams(tau_m, lo)


@dataclass(frozen=True, eq=False)
class EquivalenceReport:
    """Per-coefficient comparison of the Poisson and Fourier routes."""

    params: SeriesParams
    poisson: np.ndarray
    fourier: np.ndarray
    deviations: np.ndarray
    max_deviation: float
    argmax_n: int
    panels: int
    last_change: float


def equivalence_report(params: SeriesParams,
                       q: QuadratureConfig = QuadratureConfig()) -> EquivalenceReport:
    poisson = poisson_coefficients(params).coeffs
    result = fourier_coefficients_quadrature(params, q)
    if not result.converged:
        raise QuadratureNotConverged(result)
    fourier = result.series.coeffs
    dev = np.abs(poisson - fourier)
    k = int(np.argmax(dev))
    return EquivalenceReport(params, poisson, fourier, dev, float(dev[k]), k,
                             result.panels, result.last_change)
