"""Hot-kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
numpy implementations in ``_pykernels`` are used.  Setting the environment
variable ``FRACLAP_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

_ext = None
if os.environ.get("FRACLAP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _ext
    except ImportError:  # extension not built
        _ext = None

BACKEND = "cython" if _ext is not None else "python"


def available_backends() -> list[str]:
    try:
        from . import _ckernels  # noqa: F401
    except ImportError:
        return ["python"]
    return ["cython", "python"]


def get_backend(name: str | None = None):
    """Return the kernel namespace for ``name`` (default: the active one)."""
    name = name or BACKEND
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _CythonShim(_ckernels)
    raise ValueError(f"unknown backend {name!r}")


class _CythonShim:
    def __init__(self, mod):
        self._mod = mod

    def log_gamma_ratio(self, x, y):
        return self._mod.log_gamma_ratio(float(x), float(y))

    def image_sum(self, alpha, p, n_chain, n_start, n_stop):
        return self._mod.image_sum(float(alpha), int(p), int(n_chain), int(n_start), int(n_stop))

    def circulant_matvec(self, row, u):
        row = np.ascontiguousarray(row, dtype=float)
        u = np.ascontiguousarray(u, dtype=float)
        return np.asarray(self._mod.circulant_matvec(row, u))

    def abs_power_sum(self, x, beta, n_lo, n_hi):
        return self._mod.abs_power_sum(float(x), float(beta), int(n_lo), int(n_hi))


_active = get_backend()
log_gamma_ratio = _active.log_gamma_ratio
image_sum = _active.image_sum
circulant_matvec = _active.circulant_matvec
abs_power_sum = _active.abs_power_sum
log_gamma_ratio_array = _pykernels.log_gamma_ratio_array

__all__ = [
    "BACKEND",
    "available_backends",
    "get_backend",
    "log_gamma_ratio",
    "log_gamma_ratio_array",
    "image_sum",
    "circulant_matvec",
    "abs_power_sum",
]
