"""Kernel selection and shared numeric helpers.

The compiled extension is used when it imports; set ``RABIPATTERN_PURE_PYTHON=1``
to force the numpy fallback.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels_py

if os.environ.get("RABIPATTERN_PURE_PYTHON", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_CHUNK = 256


def get_kernel(backend: str | None = None):
    """Return the ``excitation_sum`` implementation for ``backend`` (``compiled``/``python``/None=default)."""
    if backend is None:
        backend = BACKEND
    if backend == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernel extension is not available")
        return _compiled.excitation_sum
    if backend == "python":
        return _kernels_py.excitation_sum
    raise ValueError(f"unknown backend {backend!r}")


def resolve_threads(threads) -> int:
    if threads in (None, "auto"):
        return os.cpu_count() or 1
    n = int(threads)
    if n < 1:
        raise ValueError("threads must be >= 1")
    return n


def excitation_sum(weights, rabi, area, threads=1, backend=None) -> np.ndarray:
    """Evaluate the kernel, splitting ``area`` across threads.

    Each output element is computed independently, so the result does not
    depend on the thread count.
    """
    kern = get_kernel(backend)
    area = np.ascontiguousarray(area, dtype=np.float64).ravel()
    nthreads = resolve_threads(threads)
    if nthreads == 1 or area.size <= _CHUNK:
        return kern(weights, rabi, area)
    chunks = [area[i : i + _CHUNK] for i in range(0, area.size, _CHUNK)]
    with ThreadPoolExecutor(max_workers=nthreads) as ex:
        parts = list(ex.map(lambda a: kern(weights, rabi, a), chunks))
    return np.concatenate(parts)


def cospi(y):
    """``cos(pi * y)`` with exact zeros at half-integers and exact +-1 at integers."""
    y = np.abs(np.asarray(y, dtype=np.float64))
    y = np.fmod(y, 2.0)
    y = np.where(y > 1.0, 2.0 - y, y)
    out = np.where(
        y <= 0.25,
        np.cos(math.pi * y),
        np.where(y < 0.75, np.sin(math.pi * (0.5 - y)), -np.cos(math.pi * (1.0 - y))),
    )
    return out if out.ndim else float(out)


def standing_wave(x, k: float = 2.0 * math.pi):
    """``cos(k x)`` evaluated so that nodes give exactly zero."""
    return cospi(np.asarray(x, dtype=np.float64) * (k / math.pi))
