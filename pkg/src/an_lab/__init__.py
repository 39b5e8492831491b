"""Absolutely norming positive operators: exact classification, decomposition,
witnesses, and finite-truncation numerics."""
from an_lab.classifier import (
    ANVerdict,
    ConstantModulusFamily,
    DiagonalOperatorSpec,
    FixedComplex,
    NormingVerdict,
    PhasedTail,
    Reason,
    build_witness,
    classify_diagonal,
    classify_norming,
    classify_positive,
    modulus_spectrum,
)
from an_lab.decomposer import Decomposition, add_decompositions, decompose, reconstruct
from an_lab.spectrum import (
    INFINITE,
    Direction,
    EigenvalueAtom,
    Geometric,
    Harmonic,
    SpectrumSpec,
    TailSequence,
    check_conditions,
    limit_points,
    sup_norm,
    top_k_values,
)
from an_lab.witness import WitnessKind, WitnessPlan, emit_basis_vectors

__version__ = "0.1.0"

__all__ = [
    "ANVerdict", "ConstantModulusFamily", "Decomposition", "DiagonalOperatorSpec",
    "Direction", "EigenvalueAtom", "FixedComplex", "Geometric", "Harmonic", "INFINITE",
    "NormingVerdict", "PhasedTail", "Reason", "SpectrumSpec", "TailSequence",
    "WitnessKind", "WitnessPlan", "add_decompositions", "build_witness",
    "check_conditions", "classify_diagonal", "classify_norming", "classify_positive",
    "decompose", "emit_basis_vectors", "limit_points", "modulus_spectrum",
    "reconstruct", "sup_norm", "top_k_values",
]
