"""Hot numerical kernels with a numba fast path and a pure-numpy fallback.

Set the environment variable ESQPT_DISABLE_NUMBA=1 to force the numpy path
(useful for debugging and for the benchmark comparison).
"""

from __future__ import annotations

import os

import numpy as np

from . import _derivs

USE_NUMBA = os.environ.get("ESQPT_DISABLE_NUMBA", "").lower() not in ("1", "true", "yes")
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a hard dependency normally
        USE_NUMBA = False

if USE_NUMBA:
    def _jit(f):
        return njit(cache=True)(f)
else:
    def _jit(f):
        return f


def _h_eval_impl(x, y, px, py, b0, ze, xi):
    u = 0.5 * (x * x + y * y + px * px + py * py)
    pg = x * py - y * px
    a = (py * py - px * px) * x + 2.0 * px * py * y - x * x * x + 3.0 * x * y * y
    s = np.sqrt(np.abs(1.0 - u) / 2.0)
    h = u * u + b0 * b0 * (1.0 - u) * u + ze * ze * pg * pg + ze * b0 * s * a
    if xi != 0.0:
        bpb = x * px + y * py
        w = 0.5 * (x * x + y * y - px * px - py * py) - b0 * b0 * (1.0 - u)
        h = h + xi * 0.5 * (bpb * bpb + w * w)
    return h


def _potential_impl(x, y, b0, ze, xi):
    u = 0.5 * (x * x + y * y)
    a = -x * x * x + 3.0 * x * y * y
    s = np.sqrt(np.abs(1.0 - u) / 2.0)
    v = u * u + b0 * b0 * (1.0 - u) * u + ze * b0 * s * a
    if xi != 0.0:
        w = u - b0 * b0 * (1.0 - u)
        v = v + xi * 0.5 * w * w
    return v


h_eval = _jit(_h_eval_impl)
potential = _jit(_potential_impl)

grad_h1 = _jit(_derivs.grad_h1)
hess_h1 = _jit(_derivs.hess_h1)
grad_extra = _jit(_derivs.grad_extra)
hess_extra = _jit(_derivs.hess_extra)

_TRIU = np.array([0, 1, 2, 3, 1, 4, 5, 6, 2, 5, 7, 8, 3, 6, 8, 9])


def h_grad(x, y, px, py, b0, ze, xi):
    """Gradient of the classical Hamiltonian; shape (4,) + broadcast shape."""
    g = np.array(grad_h1(x, y, px, py, b0, ze), dtype=float)
    if xi != 0.0:
        g = g + xi * np.array(grad_extra(x, y, px, py, b0), dtype=float)
    return g


def h_hess(x, y, px, py, b0, ze, xi):
    """Hessian; shape broadcast + (4, 4)."""
    t = np.array(hess_h1(x, y, px, py, b0, ze), dtype=float)
    if xi != 0.0:
        t = t + xi * np.array(hess_extra(x, y, px, py, b0), dtype=float)
    t = np.broadcast_arrays(*t)
    full = np.stack([t[i] for i in _TRIU], axis=-1)
    return full.reshape(full.shape[:-1] + (4, 4))
