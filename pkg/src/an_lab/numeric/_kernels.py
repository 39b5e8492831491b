"""Cyclic Jacobi sweeps for complex Hermitian matrices.

Two interchangeable kernels operate in place on ``a`` (Hermitian, complex128)
and accumulate the unitary in ``v``. The numba kernel is used unless
``AN_LAB_DISABLE_NUMBA`` is set to a truthy value or numba is unavailable.

Each rotation first removes the phase of ``a[p, q]`` with a diagonal unitary,
then applies the real symmetric 2x2 Jacobi rotation.
"""
from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_TRUTHY = {"1", "true", "yes", "on"}


def numba_disabled() -> bool:
    return os.environ.get("AN_LAB_DISABLE_NUMBA", "").strip().lower() in _TRUTHY


def _rotation(app, aqq, r):
    theta = (aqq - app) / (2.0 * r)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    return t, c, t * c


def _off_norm_numpy(a):
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def jacobi_numpy(a, v, tol_off, tiny, max_sweeps):
    """Pure numpy kernel: one vectorized row/column update per rotation."""
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        if _off_norm_numpy(a) <= tol_off:
            return sweep, True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= tiny:
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                e = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                t, c, s = _rotation(app, aqq, r)
                ce = e.conjugate()

                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * ce * colq
                a[:, q] = s * colp + c * ce * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * e * rowq
                a[q, :] = s * rowp + c * e * rowq
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                a[p, q] = 0.0
                a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * ce * vq
                v[:, q] = s * vp + c * ce * vq
    return max_sweeps, False


def _jacobi_loops(a, v, tol_off, tiny, max_sweeps):
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if math.sqrt(off) <= tol_off:
            return sweep, True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= tiny:
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                e = apq / r
                ce = e.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    xp = a[k, p]
                    xq = a[k, q]
                    a[k, p] = c * xp - s * ce * xq
                    a[k, q] = s * xp + c * ce * xq
                for k in range(n):
                    xp = a[p, k]
                    xq = a[q, k]
                    a[p, k] = c * xp - s * e * xq
                    a[q, k] = s * xp + c * e * xq
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    xp = v[k, p]
                    xq = v[k, q]
                    v[k, p] = c * xp - s * ce * xq
                    v[k, q] = s * xp + c * ce * xq
    return max_sweeps, False


if numba is not None:
    jacobi_numba = numba.njit(cache=True)(_jacobi_loops)
else:  # pragma: no cover
    jacobi_numba = None


def select_kernel(backend=None):
    """Return ``(name, kernel)``; ``backend`` is ``"numba"``, ``"numpy"`` or ``None`` (auto)."""
    if backend is None:
        backend = "numpy" if numba_disabled() or jacobi_numba is None else "numba"
    if backend == "numba":
        if jacobi_numba is None:
            raise RuntimeError("numba backend requested but numba is not importable")
        return "numba", jacobi_numba
    if backend == "numpy":
        return "numpy", jacobi_numpy
    raise ValueError(f"unknown backend {backend!r}")
