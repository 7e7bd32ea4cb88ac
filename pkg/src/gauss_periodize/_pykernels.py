"""NumPy implementations of the hot loops.

Used when the compiled ``_ckernels`` extension is unavailable. Each function
performs the same floating-point operations in the same order as its
compiled twin, so the two backends differ only where libm and NumPy's
``sin``/``cos`` differ.
"""

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1
_HALF_PI = 0.5 * np.pi


def _split(x):
    c = _SPLITTER * x
    hi = c - (c - x)
    return hi, x - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def clenshaw_cosine(coeffs, theta):
    """Return ``-a0/2 + sum_n a_n cos(n*theta)`` for every angle.

    Reinsch's form of the Clenshaw recurrence: the increment
    ``u = 2(cos(theta) -+ 1)`` is formed from ``sin(theta/2)`` or
    ``cos(theta/2)`` so the recurrence stays well conditioned near
    ``theta = 0`` and ``theta = +-pi``.
    """
    a = np.ascontiguousarray(coeffs, dtype=np.float64)
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    near_zero = np.abs(theta) <= _HALF_PI
    half = 0.5 * theta
    s = np.sin(half)
    c = np.cos(half)
    u = np.where(near_zero, -4.0 * (s * s), 4.0 * (c * c))
    sign = np.where(near_zero, 1.0, -1.0)
    b = np.zeros_like(theta)
    d = np.zeros_like(theta)
    for k in range(a.shape[0] - 1, 0, -1):
        d = a[k] + u * b + sign * d
        b = sign * b + d
    return 0.5 * a[0] + sign * d + 0.5 * u * b


def compensated_cosine(coeffs, theta):
    """Term-by-term ``-a0/2 + sum_n a_n cos(n*theta)`` with error-free sums.

    ``n*theta`` is split into its rounded value and exact error so each
    cosine is accurate to about an ulp; products and sums are accumulated
    with TwoProduct/TwoSum compensation.
    """
    a = np.ascontiguousarray(coeffs, dtype=np.float64)
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    total = np.full_like(theta, -0.5 * a[0])
    comp = np.zeros_like(theta)
    total, err = _two_sum(total, np.full_like(theta, a[0]))
    comp += err
    for n in range(1, a.shape[0]):
        p, e = _two_prod(float(n), theta)
        cn = np.cos(p) - np.sin(p) * e
        term, term_err = _two_prod(a[n], cn)
        total, err = _two_sum(total, term)
        comp += err + term_err
    return total + comp


def periodized_gaussian(t, tau_m, images):
    """Sum of ``exp(-(t/2 + k*tau_m)**2)`` for ``|k| <= images``."""
    t = np.ascontiguousarray(t, dtype=np.float64)
    h = 0.5 * t
    acc = np.zeros_like(t)
    for k in range(images, 0, -1):
        kt = k * tau_m
        zp = h + kt
        zm = h - kt
        acc = acc + (np.exp(-(zp * zp)) + np.exp(-(zm * zm)))
    return acc + np.exp(-(h * h))
