"""Dense finite-dimensional checks backed by a cyclic Jacobi eigensolver."""
from an_lab.numeric.linalg import (
    SubspaceBasis,
    absolute_value,
    gram_schmidt,
    negative_eigenvalue_count,
    operator_norm,
    polar,
    restricted_norm,
    sym_eigen,
)
from an_lab.numeric.truncation import TruncationReport, truncation_study

__all__ = [
    "SubspaceBasis", "TruncationReport", "absolute_value", "gram_schmidt",
    "negative_eigenvalue_count", "operator_norm", "polar", "restricted_norm",
    "sym_eigen", "truncation_study",
]
