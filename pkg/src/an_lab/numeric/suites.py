"""Finite-dimensional property suites: polar, |T|, norming, negative counts."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from an_lab.numeric.linalg import (
    absolute_value,
    as_matrix,
    negative_eigenvalue_count,
    operator_norm,
    polar,
    sym_eigen,
)

# ASCII bytes of "AN0P"
DEFAULT_SEED = int.from_bytes(b"AN0P", "big")

POLAR_TOL = 1e-9
ABSVAL_TOL = 1e-10
NORMING_TOL = 1e-9


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool


@dataclass
class SuiteResult:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, value, tolerance, passed=None):
        if passed is None:
            passed = value <= tolerance
        self.checks.append(Check(name, float(value), float(tolerance), bool(passed)))

    def lines(self):
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            yield f"{self.suite}.{c.name} {c.value:.12e} tol={c.tolerance:.12e} {status}"


def random_complex_matrix(rng, rows, cols=None, rank=None) -> np.ndarray:
    cols = rows if cols is None else cols

    def gauss(r, c):
        return (rng.standard_normal((r, c)) + 1j * rng.standard_normal((r, c))) / np.sqrt(2)

    if rank is None or rank >= min(rows, cols):
        return gauss(rows, cols)
    return gauss(rows, rank) @ gauss(rank, cols)


def random_psd(rng, n, rank) -> np.ndarray:
    x = random_complex_matrix(rng, n, rank)
    return x @ x.conj().T


def random_hermitian(rng, n, rank) -> np.ndarray:
    """Rank-``rank`` Hermitian matrix with eigenvalues of both signs (for rank >= 2)."""
    q, _ = np.linalg.qr(random_complex_matrix(rng, n, rank))
    signs = np.where(np.arange(rank) % 2 == 0, -1.0, 1.0)
    lam = signs * rng.uniform(0.5, 3.0, rank)
    return (q * lam) @ q.conj().T


def polar_suite(t, backend=None) -> SuiteResult:
    t = as_matrix(t)
    res = SuiteResult("polar")
    u, abs_t = polar(t, backend=backend)
    scale = operator_norm(t, backend=backend)
    tol = POLAR_TOL * scale
    res.add("residual", np.max(np.abs(t - u @ abs_t)), tol, None)
    res.add("adjoint_residual", np.max(np.abs(u.conj().T @ t - abs_t)), tol, None)
    return res


def absval_suite(t, rng, n_vectors=100, backend=None) -> SuiteResult:
    """``||Tx|| = || |T| x ||`` on random unit vectors."""
    t = as_matrix(t)
    res = SuiteResult("absval")
    abs_t = absolute_value(t, backend=backend)
    worst = 0.0
    for _ in range(n_vectors):
        x = random_complex_matrix(rng, t.shape[1], 1)[:, 0]
        x /= np.linalg.norm(x)
        worst = max(worst, abs(np.linalg.norm(t @ x) - np.linalg.norm(abs_t @ x)))
    res.add("norm_identity", worst, ABSVAL_TOL)
    return res


def norming_suite(t, backend=None) -> SuiteResult:
    """``||T||`` is an eigenvalue of both ``|T|`` and ``|T*|``."""
    t = as_matrix(t)
    res = SuiteResult("norming")
    norm = operator_norm(t, backend=backend)
    for name, m in (("abs_T", t), ("abs_T_adjoint", t.conj().T)):
        w = sym_eigen(absolute_value(m, backend=backend), backend=backend).values
        res.add(f"norm_is_eigenvalue_of_{name}", np.min(np.abs(w - norm)), NORMING_TOL)
    return res


def negcount_suite(k, f, backend=None) -> SuiteResult:
    res = SuiteResult("negcount")
    count, bound = negative_eigenvalue_count(k, f, backend=backend)
    res.add("count_minus_bound", count - bound, 0)
    return res
