"""Named operator models used as fixtures and CLI examples."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from an_lab.classifier import ConstantModulusFamily, DiagonalOperatorSpec
from an_lab.spectrum import INFINITE, Direction, EigenvalueAtom, Harmonic, SpectrumSpec, TailSequence


@dataclass(frozen=True)
class ModelRegistryEntry:
    name: str
    spec: Union[SpectrumSpec, DiagonalOperatorSpec]
    provenance: str

    def __post_init__(self):
        if not self.provenance:
            raise ValueError("provenance must be non-empty")


_ENTRIES = [
    ModelRegistryEntry(
        "ramesh-counterexample",
        SpectrumSpec([EigenvalueAtom("1/2", 1), EigenvalueAtom(1, INFINITE)]),
        "diag(1/2, 1, 1, ...): positive, neither compact nor scalar plus compact, "
        "yet absolutely norming",
    ),
    ModelRegistryEntry(
        "two-limit-blocks",
        SpectrumSpec(tails=[
            TailSequence(1, Direction.DECREASING, Harmonic("1/2", 1)),
            TailSequence(2, Direction.DECREASING, Harmonic(1, 1)),
        ]),
        "(aI + K1) + (bI + K2) with a = 1 < b = 2: every subset attains its supremum, "
        "but two limit points rule out AN",
    ),
    ModelRegistryEntry(
        "isometry-phase",
        DiagonalOperatorSpec([ConstantModulusFamily(1, "lambda_i = a_i + i b_i, a_i increasing")]),
        "diagonal isometry with unimodular entries of pairwise distinct phase",
    ),
    ModelRegistryEntry(
        "sum-not-an",
        SpectrumSpec(tails=[TailSequence(2, Direction.INCREASING, Harmonic(1, 1))]),
        "T + T* of the unimodular diagonal isometry (a = 1): eigenvalues 2 - 1/n "
        "never reach the norm 2",
    ),
    ModelRegistryEntry(
        "projection-infinite",
        SpectrumSpec([EigenvalueAtom(0, INFINITE), EigenvalueAtom(1, INFINITE)]),
        "range projection VV* of an isometry with infinite codimension: "
        "eigenvalues 0 and 1 both of infinite multiplicity",
    ),
]

MODELS = {e.name: e for e in _ENTRIES}
if len(MODELS) != len(_ENTRIES):
    raise RuntimeError("duplicate model names")


def get_model(name: str) -> ModelRegistryEntry:
    try:
        return MODELS[name]
    except KeyError:
        raise KeyError(f"unknown model {name!r}; known: {', '.join(MODELS)}") from None


def model_names() -> list[str]:
    return list(MODELS)
