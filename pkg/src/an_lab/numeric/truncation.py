"""Finite truncations of spectra and witness plans, and their norm gaps."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from an_lab.numeric.linalg import SubspaceBasis, restricted_norm
from an_lab.spectrum import SpectrumSpec, sup_norm, top_k_values
from an_lab.witness import WitnessKind, WitnessPlan, emit_basis_vectors

__all__ = [
    "TruncationReport",
    "materialize_plan",
    "materialize_spec",
    "reports_to_csv",
    "truncation_study",
]

GAP_SLACK = 1e-10


@dataclass(frozen=True, eq=False)
class TruncationReport:
    N: int
    restricted_norm: float
    sup_value: float
    gap: float
    attaining_vector: np.ndarray

    def __post_init__(self):
        if self.gap < -GAP_SLACK:
            raise ValueError(f"restricted norm exceeds the supremum by {-self.gap:.3e}")


def materialize_spec(spec: SpectrumSpec, N: int):
    """``diag`` of the ``N`` largest eigenvalues, with the whole space as subspace."""
    values = np.array([float(v) for v, _ in top_k_values(spec, N)], dtype=np.complex128)
    return np.diag(values), SubspaceBasis.identity(N)


def materialize_plan(plan: WitnessPlan, N: int):
    """``T`` on the ``2N`` vectors ``f_1, g_1, ..., f_N, g_N`` and the witness basis.

    Plans with a single family (an increasing tail) use the ``N`` vectors
    ``f_n`` directly.
    """
    rows = emit_basis_vectors(plan, N)
    if plan.kind is WitnessKind.INCREASING_APPROACH:
        t = np.diag([complex(float(plan.f_value(n))) for n in range(1, N + 1)])
        return t, SubspaceBasis.identity(N)
    diag = np.empty(2 * N, dtype=np.complex128)
    v = np.zeros((2 * N, N), dtype=np.complex128)
    for r in rows:
        i = 2 * (r.n - 1)
        diag[i] = float(plan.f_value(r.n))
        diag[i + 1] = float(plan.g_value(r.n))
        v[i, r.n - 1] = r.f_coefficient
        v[i + 1, r.n - 1] = r.g_coefficient
    return np.diag(diag), SubspaceBasis(v)


def truncation_study(source, N_list, backend=None) -> list[TruncationReport]:
    """Restricted norm versus the unattained supremum for each truncation size."""
    N_list = list(N_list)
    if not N_list:
        raise ValueError("N_list must be non-empty")
    if any(n < 1 for n in N_list) or any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ValueError(f"N_list must be positive and strictly increasing, got {N_list}")

    if isinstance(source, SpectrumSpec):
        sup = float(sup_norm(source).norm)
        build = materialize_spec
    elif isinstance(source, WitnessPlan):
        sup = float(source.sup_value)
        build = materialize_plan
    else:
        raise TypeError(f"expected SpectrumSpec or WitnessPlan, got {type(source).__name__}")

    reports = []
    for n in N_list:
        t, basis = build(source, n)
        norm, vec = restricted_norm(t, basis, backend=backend)
        reports.append(TruncationReport(n, norm, sup, sup - norm, vec))
    return reports


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "restricted_norm", "sup_value", "gap"])
    for r in reports:
        w.writerow([r.N, f"{r.restricted_norm:.12e}", f"{r.sup_value:.12e}", f"{r.gap:.12e}"])
    return buf.getvalue()
