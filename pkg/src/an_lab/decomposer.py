"""Canonical ``alpha*I + K + F`` form of a positive AN spectrum, and its inverse."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from an_lab.errors import ConditionViolation, InvalidDecomposition, SpecError
from an_lab.spectrum import (
    INFINITE,
    Direction,
    EigenvalueAtom,
    SpectrumSpec,
    TailSequence,
    check_conditions,
    format_rational,
    limit_points,
    parse_rational,
    tail_from_json,
    tail_to_json,
)

__all__ = ["Decomposition", "add_decompositions", "decompose", "reconstruct"]

_CONDITION_NAMES = ("sup_is_max", "single_limit", "single_infinite", "limit_matches_infinite")


def _pairs(items) -> tuple:
    out = []
    for value, mult in items:
        value = parse_rational(value)
        if isinstance(mult, bool) or not isinstance(mult, int) or mult < 1:
            raise InvalidDecomposition(f"multiplicity must be a positive integer, got {mult!r}")
        out.append((value, mult))
    return tuple(out)


@dataclass(frozen=True)
class Decomposition:
    """``P = alpha*I + K + F`` on a diagonal model.

    ``f_atoms`` are the signed finite-rank eigenvalues, ``k_atoms`` and
    ``k_tails`` the positive compact part. ``alpha_infinite`` records whether
    the scalar part acts on an infinite-dimensional remainder (an eigenvalue
    ``alpha`` of infinite multiplicity); ``alpha_finite_multiplicity`` counts
    eigenvalues equal to ``alpha`` otherwise, which neither K nor F can hold.
    """

    alpha: Fraction
    alpha_infinite: bool = False
    f_atoms: tuple = ()
    k_atoms: tuple = ()
    k_tails: tuple = ()
    alpha_finite_multiplicity: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha", parse_rational(self.alpha))
        object.__setattr__(self, "f_atoms", _pairs(self.f_atoms))
        object.__setattr__(self, "k_atoms", _pairs(self.k_atoms))
        object.__setattr__(self, "k_tails", tuple(self.k_tails))
        if self.alpha < 0:
            raise InvalidDecomposition(f"alpha must be >= 0, got {self.alpha}")
        if self.alpha_finite_multiplicity < 0:
            raise InvalidDecomposition("alpha_finite_multiplicity must be >= 0")
        for v, _ in self.k_atoms:
            if v <= 0:
                raise InvalidDecomposition(f"K eigenvalues must be > 0, got {v}")
        for v, _ in self.f_atoms:
            if v == 0:
                raise InvalidDecomposition("F must not carry zero eigenvalues")
        for t in self.k_tails:
            if not isinstance(t, TailSequence) or not t.decreasing or t.limit != 0:
                raise InvalidDecomposition(f"K tails must decrease to 0, got {t!r}")

    @property
    def k_tail(self):
        """The single K tail, or ``None``. Sums of decompositions may carry several."""
        if len(self.k_tails) > 1:
            raise ValueError("decomposition carries several K tails; use k_tails")
        return self.k_tails[0] if self.k_tails else None

    @property
    def has_compact_tail(self) -> bool:
        return bool(self.k_tails)

    def to_json(self) -> dict:
        if not self.k_tails:
            k_tail = None
        elif len(self.k_tails) == 1:
            k_tail = tail_to_json(self.k_tails[0])
        else:
            k_tail = [tail_to_json(t) for t in self.k_tails]
        out = {
            "alpha": format_rational(self.alpha),
            "alpha_infinite": self.alpha_infinite,
            "F": [[format_rational(v), m] for v, m in self.f_atoms],
            "K_atoms": [[format_rational(v), m] for v, m in self.k_atoms],
            "K_tail": k_tail,
        }
        if self.alpha_finite_multiplicity:
            out["alpha_finite_multiplicity"] = self.alpha_finite_multiplicity
        return out

    @classmethod
    def from_json(cls, data: dict) -> Decomposition:
        from an_lab.schema import validate_decomposition

        validate_decomposition(data)
        raw = data["K_tail"]
        if raw is None:
            tails = []
        elif isinstance(raw, list):
            tails = [tail_from_json(t) for t in raw]
        else:
            tails = [tail_from_json(raw)]
        return cls(
            alpha=parse_rational(data["alpha"]),
            alpha_infinite=data["alpha_infinite"],
            f_atoms=[(parse_rational(v), m) for v, m in data["F"]],
            k_atoms=[(parse_rational(v), m) for v, m in data["K_atoms"]],
            k_tails=tails,
            alpha_finite_multiplicity=data.get("alpha_finite_multiplicity", 0),
        )


def decompose(spec: SpectrumSpec) -> Decomposition:
    """Extract ``(alpha, K, F)`` from a spectrum that passes all four conditions.

    alpha is the tail limit when a tail exists, else the value of the
    infinite-multiplicity atom, else 0. Atoms below alpha go to F; atoms above
    alpha go to F when there is no tail and to K otherwise.
    """
    report = check_conditions(spec)
    if not report.all_pass:
        failed = _CONDITION_NAMES[report.first_failure]
        raise ConditionViolation(f"no decomposition: condition {failed} fails", report)

    points = limit_points(spec)
    infinite = [a for a in spec.atoms if a.infinite]
    has_limit = len(points) == 1

    if has_limit:
        alpha = points.values[0]
    elif infinite:
        alpha = infinite[0].value
    else:
        alpha = Fraction(0)

    f_atoms, k_atoms = [], []
    at_alpha = 0
    for a in spec.atoms:
        if a.infinite:
            # only one infinite value survives the conditions, and it equals alpha
            continue
        shift = a.value - alpha
        if shift == 0:
            at_alpha += a.multiplicity
        elif shift > 0 and has_limit:
            k_atoms.append((shift, a.multiplicity))
        else:
            f_atoms.append((shift, a.multiplicity))

    alpha_infinite = bool(infinite)
    k_tails = [TailSequence(0, Direction.DECREASING, t.rule, t.term_multiplicity)
               for t in spec.tails]
    return Decomposition(
        alpha=alpha,
        alpha_infinite=alpha_infinite,
        f_atoms=f_atoms,
        k_atoms=k_atoms,
        k_tails=k_tails,
        # finite copies of alpha are absorbed by an infinite eigenvalue at alpha
        alpha_finite_multiplicity=0 if alpha_infinite else at_alpha,
    )


def reconstruct(d: Decomposition) -> SpectrumSpec:
    atoms = []
    for f, m in d.f_atoms:
        v = d.alpha + f
        if v < 0:
            raise InvalidDecomposition(f"alpha + F eigenvalue {v} is negative")
        atoms.append(EigenvalueAtom(v, m))
    for k, m in d.k_atoms:
        atoms.append(EigenvalueAtom(d.alpha + k, m))
    if d.alpha_infinite:
        atoms.append(EigenvalueAtom(d.alpha, INFINITE))
    elif d.alpha_finite_multiplicity:
        atoms.append(EigenvalueAtom(d.alpha, d.alpha_finite_multiplicity))
    tails = [t.shifted(d.alpha) for t in d.k_tails]
    try:
        return SpectrumSpec(atoms, tails)
    except SpecError as exc:
        raise InvalidDecomposition(str(exc)) from exc


def add_decompositions(d1: Decomposition, d2: Decomposition) -> Decomposition:
    """Sum of two positive AN operators written on a common diagonal model.

    Scalars add; finite-rank and compact parts are carried side by side. Two
    K tails have no single closed form, so both are kept.
    """
    return Decomposition(
        alpha=d1.alpha + d2.alpha,
        alpha_infinite=d1.alpha_infinite or d2.alpha_infinite,
        f_atoms=d1.f_atoms + d2.f_atoms,
        k_atoms=d1.k_atoms + d2.k_atoms,
        k_tails=d1.k_tails + d2.k_tails,
        alpha_finite_multiplicity=(
            0 if (d1.alpha_infinite or d2.alpha_infinite)
            else d1.alpha_finite_multiplicity + d2.alpha_finite_multiplicity),
    )
