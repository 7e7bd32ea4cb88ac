import math
import sys

import mpmath
import numpy as np
import pytest

from gauss_periodize import _kernels

mpmath.mp.dps = 50

MIN_NORMAL = sys.float_info.min


def ulps(x, ref):
    """|x - ref| in units of the spacing at ref."""
    return abs(float(x) - float(ref)) / np.spacing(abs(float(ref)))


def mp_coefficient(n, tau_m):
    tau = mpmath.mpf(tau_m)
    return 2 * mpmath.sqrt(mpmath.pi) / tau * mpmath.exp(-(mpmath.pi * n / tau) ** 2)


def mp_tail(n_max, tau_m, extra=200):
    """Brute-force sum of a_n for n_max < n <= n_max + extra, stopping at underflow."""
    total = mpmath.mpf(0)
    for n in range(n_max + 1, n_max + extra + 1):
        a = mp_coefficient(n, tau_m)
        if a < MIN_NORMAL * 1e-20:
            break
        total += a
    return total


@pytest.fixture(params=_kernels.available_backends())
def backend(request, monkeypatch):
    """Route every kernel call through one backend for the duration of a test."""
    mod = _kernels.load_backend(request.param)
    for name in ("clenshaw_cosine", "compensated_cosine", "periodized_gaussian"):
        monkeypatch.setattr(_kernels, name, getattr(mod, name))
    return request.param
