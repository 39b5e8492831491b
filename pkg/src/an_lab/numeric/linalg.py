"""Dense finite-truncation linear algebra built on the Jacobi eigensolver.

Matrices are plain 2-D numpy arrays; every entry point converts its input to
``complex128`` and rejects non-finite entries.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from an_lab.errors import DependentInput, NoConvergence, NotHermitian, NotOrthonormal, NotPSD
from an_lab.numeric._kernels import select_kernel

HERMITIAN_TOL = 1e-12
RESIDUAL_TOL = 1e-10
OFF_DIAGONAL_TOL = 1e-14
MAX_SWEEPS = 100
RANK_TOL = 1e-10
NEGATIVE_TOL = 1e-10
PSD_TOL = 1e-10
PIVOT_TOL = 1e-12


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2 or a.size == 0:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    a = a.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has NaN or infinite entries")
    return a


class Eigh(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray
    sweeps: int


def sym_eigen(a, hermitian: bool = True, backend=None) -> Eigh:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    Cyclic Jacobi; stops when the off-diagonal Frobenius mass falls below
    ``1e-14 * ||A||_F``. Raises :class:`NoConvergence` after 100 sweeps or if
    the residual ``||AV - V diag(w)||_max`` exceeds ``1e-10 * ||A||``.
    """
    if not hermitian:
        raise ValueError("only Hermitian input is supported")
    a = as_matrix(a)
    n, m = a.shape
    if n != m:
        raise NotHermitian(f"matrix is not square: {a.shape}")
    asym = float(np.max(np.abs(a - a.conj().T)))
    if asym > HERMITIAN_TOL:
        raise NotHermitian(f"||A - A*||_max = {asym:.3e} exceeds {HERMITIAN_TOL:g}")

    work = np.ascontiguousarray(0.5 * (a + a.conj().T))
    vecs = np.eye(n, dtype=np.complex128)
    fro = float(np.linalg.norm(work))
    if fro == 0.0:
        return Eigh(np.zeros(n), vecs, 0)

    _, kernel = select_kernel(backend)
    sweeps, converged = kernel(work, vecs, OFF_DIAGONAL_TOL * fro, 1e-18 * fro, MAX_SWEEPS)
    if not converged:
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")

    w = work.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    w, vecs = w[order], vecs[:, order]

    scale = max(float(np.max(np.abs(w))), 0.0)
    resid = float(np.max(np.abs(a @ vecs - vecs * w))) if n else 0.0
    if resid > RESIDUAL_TOL * max(scale, np.finfo(float).tiny):
        raise NoConvergence(f"eigen-residual {resid:.3e} too large for ||A|| = {scale:.3e}")
    return Eigh(w, vecs, sweeps)


def _gram(t: np.ndarray) -> np.ndarray:
    g = t.conj().T @ t
    return 0.5 * (g + g.conj().T)


def operator_norm(t, backend=None) -> float:
    """Largest singular value, via the top eigenvalue of the smaller Gram matrix."""
    t = as_matrix(t)
    g = _gram(t) if t.shape[1] <= t.shape[0] else _gram(t.conj().T)
    w = sym_eigen(g, backend=backend).values
    return float(np.sqrt(max(w[-1], 0.0)))


class SingularSystem(NamedTuple):
    sigma: np.ndarray  # descending, length min(rows, cols)
    left: np.ndarray  # columns scaled to unit norm where sigma > 0
    right: np.ndarray


def singular_system(t, backend=None) -> SingularSystem:
    """Singular triplets from the eigenpairs of ``[[0, T], [T*, 0]]``.

    The dilation has eigenvalues ``+-sigma`` with eigenvectors
    ``(u, +-v) / sqrt(2)``. Working with it instead of ``T*T`` keeps
    singular values accurate to ``eps * ||T||`` in absolute terms, so
    exact zeros come out near ``1e-16`` rather than ``1e-8``.
    """
    t = as_matrix(t)
    m, n = t.shape
    h = np.zeros((m + n, m + n), dtype=np.complex128)
    h[:m, m:] = t
    h[m:, :m] = t.conj().T
    w, z, _ = sym_eigen(h, backend=backend)
    k = min(m, n)
    idx = np.arange(m + n - 1, m + n - 1 - k, -1)
    sigma = np.clip(w[idx], 0.0, None)
    root2 = np.sqrt(2.0)
    return SingularSystem(sigma, root2 * z[:m, idx], root2 * z[m:, idx])


def absolute_value(t, backend=None) -> np.ndarray:
    """``|T| = (T*T)^(1/2)``."""
    sigma, _, v = singular_system(t, backend)
    abs_t = (v * sigma) @ v.conj().T
    return 0.5 * (abs_t + abs_t.conj().T)


class Polar(NamedTuple):
    u: np.ndarray
    abs_t: np.ndarray


def polar(t, backend=None) -> Polar:
    """``T = U|T|`` with ``U`` a partial isometry on the retained range.

    Singular values below ``1e-10 * sigma_max`` are treated as zero.
    """
    sigma, left, right = singular_system(t, backend)
    abs_t = (right * sigma) @ right.conj().T
    abs_t = 0.5 * (abs_t + abs_t.conj().T)
    top = sigma[0] if sigma.size else 0.0
    keep = sigma > RANK_TOL * top if top > 0 else np.zeros_like(sigma, dtype=bool)
    u = left[:, keep] @ right[:, keep].conj().T
    return Polar(u, abs_t)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal columns spanning a subspace (the inclusion map of that subspace)."""

    matrix: np.ndarray
    orthonormality_tolerance: float = 1e-10

    def __post_init__(self):
        v = as_matrix(self.matrix, "basis")
        object.__setattr__(self, "matrix", v)
        err = orthonormality_error(v)
        if err > self.orthonormality_tolerance:
            raise NotOrthonormal(f"||V*V - I||_max = {err:.3e} exceeds "
                                 f"{self.orthonormality_tolerance:g}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    @classmethod
    def identity(cls, n: int) -> SubspaceBasis:
        return cls(np.eye(n, dtype=np.complex128))


def orthonormality_error(v) -> float:
    v = np.asarray(v)
    return float(np.max(np.abs(v.conj().T @ v - np.eye(v.shape[1]))))


class RestrictedNorm(NamedTuple):
    norm: float
    vector: np.ndarray  # unit vector in subspace coordinates


def restricted_norm(t, basis, backend=None) -> RestrictedNorm:
    """``||T V||`` for an orthonormal ``V`` and a unit vector attaining it."""
    t = as_matrix(t)
    if not isinstance(basis, SubspaceBasis):
        basis = SubspaceBasis(basis)
    v = basis.matrix
    if v.shape[0] != t.shape[1]:
        raise ValueError(f"basis has {v.shape[0]} rows, operator has {t.shape[1]} columns")
    m = t @ v
    w, vecs, _ = sym_eigen(_gram(m), backend=backend)
    return RestrictedNorm(float(np.sqrt(max(w[-1], 0.0))), vecs[:, -1].copy())


class NegativeCount(NamedTuple):
    count: int
    bound: int


def negative_eigenvalue_count(k, f, backend=None) -> NegativeCount:
    """Negative eigenvalues of ``K + F`` and the number of negative eigenvalues of ``F``."""
    k = as_matrix(k, "K")
    f = as_matrix(f, "F")
    if k.shape != f.shape:
        raise ValueError(f"K and F shapes differ: {k.shape} vs {f.shape}")
    wk = sym_eigen(k, backend=backend).values
    if wk[0] < -PSD_TOL:
        raise NotPSD(f"K has eigenvalue {wk[0]:.3e} < -{PSD_TOL:g}")
    wf = sym_eigen(f, backend=backend).values
    ws = sym_eigen(k + f, backend=backend).values
    return NegativeCount(int(np.sum(ws < -NEGATIVE_TOL)), int(np.sum(wf < -NEGATIVE_TOL)))


def gram_schmidt(vectors, tol: float = PIVOT_TOL) -> SubspaceBasis:
    """Modified Gram-Schmidt with one reorthogonalization pass.

    A column whose remaining norm falls below ``tol`` times its original norm
    is rejected with :class:`DependentInput`.
    """
    a = as_matrix(vectors, "vectors").copy()
    n, k = a.shape
    if k > n:
        raise DependentInput(f"{k} vectors in dimension {n} cannot be independent")
    q = np.zeros_like(a)
    for j in range(k):
        x = a[:, j].copy()
        norm0 = float(np.linalg.norm(x))
        if norm0 == 0.0:
            raise DependentInput(f"column {j} is zero")
        for _ in range(2):
            for i in range(j):
                x -= (q[:, i].conj() @ x) * q[:, i]
        norm = float(np.linalg.norm(x))
        if norm <= tol * norm0:
            raise DependentInput(f"column {j} depends on the previous ones "
                                 f"(pivot {norm / norm0:.3e} <= {tol:g})")
        q[:, j] = x / norm
    return SubspaceBasis(q)
