"""N and AN verdicts for positive spectra and for diagonal complex operators."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from an_lab.decomposer import Decomposition, decompose
from an_lab.errors import NoWitness, SpecError
from an_lab.spectrum import (
    INFINITE,
    EigenvalueAtom,
    SpectrumSpec,
    TailSequence,
    check_conditions,
    format_multiplicity,
    format_rational,
    limit_points,
    parse_multiplicity,
    parse_rational,
    sup_norm,
    tail_from_json,
    tail_to_json,
)
from an_lab.witness import (
    WitnessPlan,
    witness_increasing,
    witness_limit_vs_infmult,
    witness_two_infmult,
    witness_two_limit_points,
)

__all__ = [
    "ANVerdict",
    "ConstantModulusFamily",
    "DiagonalOperatorSpec",
    "FixedComplex",
    "NormingVerdict",
    "PhasedTail",
    "Reason",
    "build_witness",
    "classify_diagonal",
    "classify_norming",
    "classify_positive",
    "modulus_spectrum",
]


class Reason(enum.Enum):
    FINITE_RANK_PLUS_SCALAR = "FiniteRankPlusScalar"
    COMPACT_PLUS_SCALAR_PLUS_FINITE_RANK = "CompactPlusScalarPlusFiniteRank"
    FAIL_INCREASING_APPROACH = "Fail_IncreasingApproach"
    FAIL_TWO_LIMIT_POINTS = "Fail_TwoLimitPoints"
    FAIL_TWO_INFINITE_MULTIPLICITIES = "Fail_TwoInfiniteMultiplicities"
    FAIL_LIMIT_NEQ_INF_MULT = "Fail_LimitNeqInfMult"


_FAILURES = (
    Reason.FAIL_INCREASING_APPROACH,
    Reason.FAIL_TWO_LIMIT_POINTS,
    Reason.FAIL_TWO_INFINITE_MULTIPLICITIES,
    Reason.FAIL_LIMIT_NEQ_INF_MULT,
)


@dataclass(frozen=True)
class ANVerdict:
    satisfied: bool
    reason: Reason
    decomposition: Optional[Decomposition] = None
    witness: Optional[WitnessPlan] = None

    def __post_init__(self):
        if self.satisfied != (self.decomposition is not None):
            raise ValueError("a satisfied verdict carries a decomposition, and only then")
        if self.satisfied == (self.witness is not None):
            raise ValueError("an unsatisfied verdict carries a witness, and only then")

    def to_json(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "reason": self.reason.value,
            "decomposition": self.decomposition.to_json() if self.decomposition else None,
            "witness": self.witness.to_json() if self.witness else None,
        }


class NormingVerdict(NamedTuple):
    satisfied: bool
    attaining_value: Optional[Fraction]

    def to_json(self) -> dict:
        v = self.attaining_value
        return {"satisfied": self.satisfied,
                "attaining_value": None if v is None else format_rational(v)}


def classify_norming(spec: SpectrumSpec) -> NormingVerdict:
    """A positive operator is norming exactly when its norm is an eigenvalue."""
    norm, attained = sup_norm(spec)
    return NormingVerdict(attained, norm if attained else None)


def build_witness(spec: SpectrumSpec, report=None) -> WitnessPlan:
    """Witness for the first failing condition of ``spec``."""
    report = report or check_conditions(spec)
    failure = report.first_failure
    if failure is None:
        raise NoWitness("spectrum satisfies every condition; no witness exists")

    if failure == 0:
        j = report.increasing_tails[0]
        return witness_increasing(spec.tails[j], f"tails[{j}]")

    if failure == 1:
        points = limit_points(spec).points
        lo, hi = points[0], points[-1]
        ja, jb = lo.tails[0], hi.tails[0]
        return witness_two_limit_points(spec.tails[ja], spec.tails[jb],
                                        f"tails[{ja}]", f"tails[{jb}]")

    if failure == 2:
        first_at: dict[Fraction, int] = {}
        for i in report.infinite_atoms:
            first_at.setdefault(spec.atoms[i].value, i)
        values = sorted(first_at)
        lo, hi = values[0], values[-1]
        return witness_two_infmult(lo, hi, f"atoms[{first_at[lo]}]", f"atoms[{first_at[hi]}]")

    j = report.mismatch_tails[0]
    i = report.mismatch_atoms[0]
    tail = spec.tails[j]
    return witness_limit_vs_infmult(tail.limit, spec.atoms[i].value, tail,
                                    f"tails[{j}]", f"atoms[{i}]")


def classify_positive(spec: SpectrumSpec) -> ANVerdict:
    report = check_conditions(spec)
    if report.all_pass:
        d = decompose(spec)
        reason = (Reason.COMPACT_PLUS_SCALAR_PLUS_FINITE_RANK if d.has_compact_tail
                  else Reason.FINITE_RANK_PLUS_SCALAR)
        return ANVerdict(True, reason, decomposition=d)
    return ANVerdict(False, _FAILURES[report.first_failure],
                     witness=build_witness(spec, report))


# -- diagonal complex operators ---------------------------------------------


@dataclass(frozen=True)
class FixedComplex:
    """Diagonal entry ``modulus * exp(i*pi*phase)`` repeated ``multiplicity`` times."""

    modulus: Fraction
    phase: Fraction = Fraction(0)
    multiplicity: object = 1

    def __post_init__(self):
        object.__setattr__(self, "modulus", parse_rational(self.modulus))
        object.__setattr__(self, "phase", parse_rational(self.phase))
        object.__setattr__(self, "multiplicity", parse_multiplicity(self.multiplicity))
        if self.modulus < 0:
            raise SpecError("modulus must be >= 0")


@dataclass(frozen=True)
class PhasedTail:
    """Entries whose moduli follow a tail; the phases are descriptive only."""

    modulus_tail: TailSequence
    phase_rule: str = ""


@dataclass(frozen=True)
class ConstantModulusFamily:
    """Infinitely many entries of equal modulus and pairwise distinct phases."""

    modulus: Fraction
    phase_rule: str = ""

    def __post_init__(self):
        object.__setattr__(self, "modulus", parse_rational(self.modulus))
        if self.modulus < 0:
            raise SpecError("modulus must be >= 0")


Entry = Union[FixedComplex, PhasedTail, ConstantModulusFamily]


@dataclass(frozen=True)
class DiagonalOperatorSpec:
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise SpecError("a diagonal operator needs at least one entry")

    def to_json(self) -> dict:
        out = []
        for e in self.entries:
            if isinstance(e, FixedComplex):
                out.append({"type": "fixed", "modulus": format_rational(e.modulus),
                            "phase": format_rational(e.phase),
                            "multiplicity": format_multiplicity(e.multiplicity)})
            elif isinstance(e, PhasedTail):
                out.append({"type": "phased_tail", "modulus_tail": tail_to_json(e.modulus_tail),
                            "phase_rule": e.phase_rule})
            else:
                out.append({"type": "constant_modulus_family",
                            "modulus": format_rational(e.modulus), "phase_rule": e.phase_rule})
        return {"entries": out}

    @classmethod
    def from_json(cls, data: dict) -> DiagonalOperatorSpec:
        from an_lab.schema import validate_diagonal

        validate_diagonal(data)
        entries = []
        for e in data["entries"]:
            if e["type"] == "fixed":
                entries.append(FixedComplex(e["modulus"], e["phase"], e["multiplicity"]))
            elif e["type"] == "phased_tail":
                entries.append(PhasedTail(tail_from_json(e["modulus_tail"]),
                                          e.get("phase_rule", "")))
            else:
                entries.append(ConstantModulusFamily(e["modulus"], e.get("phase_rule", "")))
        return cls(entries)


def modulus_spectrum(dspec: DiagonalOperatorSpec) -> SpectrumSpec:
    """Eigenvalues of ``|T|``: the moduli of the diagonal entries."""
    atoms, tails = [], []
    for e in dspec.entries:
        if isinstance(e, FixedComplex):
            atoms.append(EigenvalueAtom(e.modulus, e.multiplicity))
        elif isinstance(e, PhasedTail):
            tails.append(e.modulus_tail)
        elif isinstance(e, ConstantModulusFamily):
            atoms.append(EigenvalueAtom(e.modulus, INFINITE))
        else:
            raise SpecError(f"unknown diagonal entry {e!r}")
    return SpectrumSpec(atoms, tails)


def classify_diagonal(dspec: DiagonalOperatorSpec) -> ANVerdict:
    return classify_positive(modulus_spectrum(dspec))
