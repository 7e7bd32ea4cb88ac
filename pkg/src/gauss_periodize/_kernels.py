"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the NumPy
fallback. ``GAUSS_PERIODIZE_BACKEND=python`` forces the fallback.
"""

import os
from types import ModuleType

from . import _pykernels

BACKENDS = ("cython", "python")


def load_backend(name):
    """Return the kernel module for ``name`` (``"cython"`` or ``"python"``)."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends():
    names = []
    for name in BACKENDS:
        try:
            load_backend(name)
        except ImportError:
            continue
        names.append(name)
    return names


def _select() -> tuple[str, ModuleType]:
    forced = os.environ.get("GAUSS_PERIODIZE_BACKEND", "").strip().lower()
    if forced:
        return forced, load_backend(forced)
    try:
        return "cython", load_backend("cython")
    except ImportError:
        return "python", _pykernels


BACKEND, _impl = _select()

clenshaw_cosine = _impl.clenshaw_cosine
compensated_cosine = _impl.compensated_cosine
periodized_gaussian = _impl.periodized_gaussian
