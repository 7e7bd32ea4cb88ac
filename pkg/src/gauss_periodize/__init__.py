"""Cosine-series approximation of exp(-t^2/4) from Gaussian periodization."""

from ._kernels import BACKEND
from .analysis import (ChainCheck, EquivalenceReport, ErrorBudget, ResidualSample,
                       aliasing_bound, check_ordering_chain, equivalence_report,
                       error_budget, select_order, truncation_tail_bound,
                       wraparound_residual)
from .core import (CosineSeries, QuadratureConfig, QuadratureResult, SeriesParams,
                   fourier_coefficients_quadrature, order_cap, poisson_coefficients)
from .errors import (GaussPeriodizeError, InvalidParameterError, OrderCapExceeded,
                     OutsideValidityInterval, QuadratureNotConverged,
                     UnsatisfiableTarget)
from .evaluation import ErrorScanReport, error_scan, evaluate, evaluate_many, evaluate_naive

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ChainCheck", "CosineSeries", "EquivalenceReport", "ErrorBudget",
    "ErrorScanReport", "GaussPeriodizeError", "InvalidParameterError",
    "OrderCapExceeded", "OutsideValidityInterval", "QuadratureConfig",
    "QuadratureNotConverged", "QuadratureResult", "ResidualSample", "SeriesParams",
    "UnsatisfiableTarget", "aliasing_bound", "check_ordering_chain",
    "equivalence_report", "error_budget", "error_scan", "evaluate", "evaluate_many",
    "evaluate_naive", "fourier_coefficients_quadrature", "order_cap",
    "poisson_coefficients", "select_order", "truncation_tail_bound",
    "wraparound_residual",
]
