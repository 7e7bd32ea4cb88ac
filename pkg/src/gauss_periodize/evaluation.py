"""Evaluating a :class:`CosineSeries` and scanning its error against ``exp(-t^2/4)``."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .analysis import ErrorBudget, error_budget
from .core import EPS, CosineSeries
from .errors import InvalidParameterError

THREADS_ENV = "GAUSS_PERIODIZE_THREADS"
_MIN_CHUNK = 4096


def reduce_argument(t, tau_m):
    """Map ``t`` into ``[-tau_m, tau_m]`` modulo the period ``2*tau_m``.

    ``fmod`` is exact, and the single correction step is exact by
    Sterbenz's lemma, so the reduced argument carries no new rounding.
    Points already inside the interval are returned unchanged.
    """
    period = 2.0 * tau_m
    r = np.fmod(np.asarray(t, dtype=np.float64), period)
    r = np.where(r > tau_m, r - period, r)
    return np.where(r < -tau_m, r + period, r)


def phase(series: CosineSeries, t) -> np.ndarray:
    return np.pi * reduce_argument(t, series.tau_m) / series.tau_m


def evaluate_many(series: CosineSeries, t) -> np.ndarray:
    """Clenshaw evaluation of the series at every point of ``t``."""
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    return _kernels.clenshaw_cosine(series.coeffs, phase(series, t.ravel())).reshape(t.shape)


def evaluate(series: CosineSeries, t: float) -> float:
    """Value of ``-a_0/2 + sum_n a_n cos(pi*n*t/tau_m)`` at ``t``.

    Outside ``[-tau_m, tau_m]`` this is the periodic extension, not the
    Gaussian.
    """
    return float(evaluate_many(series, [t])[0])


def evaluate_naive(series: CosineSeries, t) -> np.ndarray:
    """Term-by-term evaluation with compensated accumulation.

    Slower than :func:`evaluate_many` and used as its cross-check.
    """
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    return _kernels.compensated_cosine(series.coeffs, phase(series, t.ravel())).reshape(t.shape)


def symmetric_grid(tau_m: float, points: int) -> np.ndarray:
    """Uniform grid on ``[-tau_m, tau_m]``, endpoints included, exactly mirror-symmetric."""
    if points < 2:
        raise InvalidParameterError(f"grid needs at least 2 points, got {points}")
    j = np.arange(-(points - 1), points, 2, dtype=np.float64)
    return tau_m * (j / (points - 1))


def eval_noise_allowance(n_max: int) -> float:
    return 16.0 * EPS * (n_max + 1)


def scan_workers() -> int | None:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or not raw.strip():
        return None
    try:
        n = int(raw)
    except ValueError:
        raise InvalidParameterError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    if n < 1:
        raise InvalidParameterError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


@dataclass(frozen=True, eq=False)
class ErrorScanReport:
    grid: np.ndarray
    series_values: np.ndarray
    exact: np.ndarray
    abs_errors: np.ndarray
    max_error: float
    argmax_t: float
    budget: ErrorBudget
    within_budget: bool


def _evaluate_partitioned(series, grid, workers):
    if workers is None or workers <= 1 or grid.size < 2 * _MIN_CHUNK:
        return evaluate_many(series, grid)
    n_chunks = min(workers, math.ceil(grid.size / _MIN_CHUNK))
    chunks = np.array_split(grid, n_chunks)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda c: evaluate_many(series, c), chunks))
    return np.concatenate(parts)


def error_scan(series: CosineSeries, grid_points: int, workers: int | None = None) -> ErrorScanReport:
    """Compare the series with ``exp(-t^2/4)`` on a uniform grid over ``[-tau_m, tau_m]``.

    ``within_budget`` compares the worst error with the analytic budget
    plus :func:`eval_noise_allowance`. ``workers`` (default: the
    ``GAUSS_PERIODIZE_THREADS`` environment variable) splits the grid across
    threads; the result does not depend on the split.
    """
    if workers is None:
        workers = scan_workers()
    grid = symmetric_grid(series.tau_m, grid_points)
    values = _evaluate_partitioned(series, grid, workers)
    exact = np.exp(-(grid * grid) / 4.0)
    errors = np.abs(values - exact)
    k = int(np.argmax(errors))
    budget = error_budget(series.params)
    max_error = float(errors[k])
    within = max_error <= budget.total + eval_noise_allowance(series.n_max)
    return ErrorScanReport(grid, values, exact, errors, max_error, float(grid[k]), budget, within)
