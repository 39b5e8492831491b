"""Symbolic eigenvalue spectra of positive diagonalizable operators.

A spectrum is a finite list of atoms (a value with finite or infinite
multiplicity) plus a finite list of monotone tails converging to a limit.
All values are exact :class:`fractions.Fraction` instances.
"""
from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Union

from an_lab.errors import SpecError

__all__ = [
    "INFINITE",
    "Approach",
    "ConditionReport",
    "Direction",
    "EigenvalueAtom",
    "Geometric",
    "Harmonic",
    "LimitPoint",
    "LimitPointReport",
    "Source",
    "SpectrumSpec",
    "SupNorm",
    "TailSequence",
    "check_conditions",
    "format_rational",
    "limit_points",
    "parse_rational",
    "sup_norm",
    "top_k_values",
]


class _Infinite:
    """Singleton marker for infinite multiplicity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()

Multiplicity = Union[int, _Infinite]


def parse_rational(x) -> Fraction:
    """Parse an int, a ``Fraction`` or a ``"p/q"`` string. Floats are rejected."""
    if isinstance(x, bool):
        raise SpecError(f"expected a rational, got boolean {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"not a rational: {x!r}") from exc
    raise SpecError(f"expected an integer or 'p/q' string, got {type(x).__name__} {x!r}")


def format_rational(q: Fraction):
    """Integers serialize as JSON ints, everything else as ``"p/q"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def parse_multiplicity(m) -> Multiplicity:
    if m is INFINITE or m == "inf":
        return INFINITE
    if isinstance(m, bool) or not isinstance(m, int):
        raise SpecError(f"multiplicity must be a positive integer or 'inf', got {m!r}")
    if m < 1:
        raise SpecError(f"multiplicity must be >= 1, got {m}")
    return m


def format_multiplicity(m: Multiplicity):
    return "inf" if m is INFINITE else m


class Direction(enum.Enum):
    DECREASING = "decreasing"
    INCREASING = "increasing"


class Approach(enum.Enum):
    FROM_ABOVE = "FromAbove"
    FROM_BELOW = "FromBelow"
    BOTH = "Both"


@dataclass(frozen=True)
class EigenvalueAtom:
    value: Fraction
    multiplicity: Multiplicity = 1

    def __post_init__(self):
        object.__setattr__(self, "value", parse_rational(self.value))
        object.__setattr__(self, "multiplicity", parse_multiplicity(self.multiplicity))
        if self.value < 0:
            raise SpecError(f"atom value must be >= 0, got {self.value}")

    @property
    def infinite(self) -> bool:
        return self.multiplicity is INFINITE


@dataclass(frozen=True)
class Harmonic:
    """Offset ``c / n**p``."""

    c: Fraction
    p: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", parse_rational(self.c))
        if self.c <= 0:
            raise SpecError(f"harmonic c must be > 0, got {self.c}")
        if isinstance(self.p, bool) or not isinstance(self.p, int) or self.p < 1:
            raise SpecError(f"harmonic p must be a positive integer, got {self.p!r}")

    def offset(self, n: int) -> Fraction:
        return self.c / n**self.p

    def scaled(self, s: Fraction) -> Harmonic:
        return Harmonic(self.c * s, self.p)


@dataclass(frozen=True)
class Geometric:
    """Offset ``c * r**n`` with ``0 < r < 1``."""

    c: Fraction
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", parse_rational(self.c))
        object.__setattr__(self, "r", parse_rational(self.r))
        if self.c <= 0:
            raise SpecError(f"geometric c must be > 0, got {self.c}")
        if not 0 < self.r < 1:
            raise SpecError(f"geometric r must lie in (0, 1), got {self.r}")

    def offset(self, n: int) -> Fraction:
        return self.c * self.r**n

    def scaled(self, s: Fraction) -> Geometric:
        return Geometric(self.c * s, self.r)


Rule = Union[Harmonic, Geometric]


@dataclass(frozen=True)
class TailSequence:
    limit: Fraction
    direction: Direction
    rule: Rule
    term_multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "limit", parse_rational(self.limit))
        if not isinstance(self.direction, Direction):
            try:
                object.__setattr__(self, "direction", Direction(self.direction))
            except ValueError as exc:
                raise SpecError(f"unknown direction {self.direction!r}") from exc
        if not isinstance(self.rule, (Harmonic, Geometric)):
            raise SpecError(f"unknown tail rule {self.rule!r}")
        m = self.term_multiplicity
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise SpecError(f"term_multiplicity must be a positive integer, got {m!r}")
        if self.limit < 0:
            raise SpecError(f"tail limit must be >= 0, got {self.limit}")
        # term(1) is the smallest term of an increasing tail
        if self.term(1) < 0:
            raise SpecError(f"increasing tail has negative first term {self.term(1)}")

    @property
    def decreasing(self) -> bool:
        return self.direction is Direction.DECREASING

    def term(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("tail terms are indexed from n = 1")
        off = self.rule.offset(n)
        return self.limit + off if self.decreasing else self.limit - off

    def terms(self, start: int = 1) -> Iterator[Fraction]:
        for n in itertools.count(start):
            yield self.term(n)

    def shifted(self, delta: Fraction) -> TailSequence:
        return TailSequence(self.limit + delta, self.direction, self.rule, self.term_multiplicity)


@dataclass(frozen=True)
class SpectrumSpec:
    atoms: tuple = ()
    tails: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "tails", tuple(self.tails))
        if not self.atoms and not self.tails:
            raise SpecError("a spectrum needs at least one atom or tail")
        for a in self.atoms:
            if not isinstance(a, EigenvalueAtom):
                raise SpecError(f"expected EigenvalueAtom, got {a!r}")
        for t in self.tails:
            if not isinstance(t, TailSequence):
                raise SpecError(f"expected TailSequence, got {t!r}")

    def canonical(self) -> tuple:
        """Order-free normal form: atoms aggregated by value, tails sorted.

        Two specs with equal canonical forms represent the same eigenvalue
        multiset.
        """
        agg: dict[Fraction, Multiplicity] = {}
        for a in self.atoms:
            prev = agg.get(a.value, 0)
            if prev is INFINITE or a.infinite:
                agg[a.value] = INFINITE
            else:
                agg[a.value] = prev + a.multiplicity
        atoms = tuple(sorted(
            (v, "inf" if m is INFINITE else m) for v, m in agg.items()))
        tails = tuple(sorted(_tail_key(t) for t in self.tails))
        return atoms, tails

    def scaled(self, s) -> SpectrumSpec:
        """Multiply every eigenvalue by a positive rational."""
        s = parse_rational(s)
        if s <= 0:
            raise SpecError("scale factor must be positive")
        return SpectrumSpec(
            [EigenvalueAtom(a.value * s, a.multiplicity) for a in self.atoms],
            [TailSequence(t.limit * s, t.direction, t.rule.scaled(s), t.term_multiplicity)
             for t in self.tails],
        )

    def squared(self) -> SpectrumSpec:
        """Spectrum of the square of the operator.

        Exact only for atoms and for tails converging to 0; other tails have
        no closed form in the supported rule families.
        """
        tails = []
        for t in self.tails:
            if t.limit != 0:
                raise SpecError("squaring a tail with nonzero limit has no closed form")
            if isinstance(t.rule, Harmonic):
                rule = Harmonic(t.rule.c**2, 2 * t.rule.p)
            else:
                rule = Geometric(t.rule.c**2, t.rule.r**2)
            tails.append(TailSequence(0, t.direction, rule, t.term_multiplicity))
        atoms = [EigenvalueAtom(a.value**2, a.multiplicity) for a in self.atoms]
        return SpectrumSpec(atoms, tails)

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "atoms": [{"value": format_rational(a.value),
                       "multiplicity": format_multiplicity(a.multiplicity)} for a in self.atoms],
            "tails": [tail_to_json(t) for t in self.tails],
        }

    @classmethod
    def from_json(cls, data: dict) -> SpectrumSpec:
        from an_lab.schema import validate_spectrum

        validate_spectrum(data)
        atoms = [EigenvalueAtom(parse_rational(a["value"]), parse_multiplicity(a["multiplicity"]))
                 for a in data.get("atoms", [])]
        tails = [tail_from_json(t) for t in data.get("tails", [])]
        return cls(atoms, tails)


def _tail_key(t: TailSequence) -> tuple:
    if isinstance(t.rule, Harmonic):
        rule = ("harmonic", t.rule.c, Fraction(t.rule.p))
    else:
        rule = ("geometric", t.rule.c, t.rule.r)
    return (t.limit, t.direction.value, rule, t.term_multiplicity)


def tail_to_json(t: TailSequence) -> dict:
    if isinstance(t.rule, Harmonic):
        rule = {"type": "harmonic", "c": format_rational(t.rule.c), "p": t.rule.p, "r": None}
    else:
        rule = {"type": "geometric", "c": format_rational(t.rule.c), "p": None,
                "r": format_rational(t.rule.r)}
    return {
        "limit": format_rational(t.limit),
        "direction": t.direction.value,
        "rule": rule,
        "term_multiplicity": t.term_multiplicity,
    }


def tail_from_json(d: dict) -> TailSequence:
    r = d["rule"]
    if r["type"] == "harmonic":
        rule = Harmonic(parse_rational(r["c"]), r.get("p") if r.get("p") is not None else 1)
    elif r["type"] == "geometric":
        if r.get("r") is None:
            raise SpecError("geometric rule needs 'r'")
        rule = Geometric(parse_rational(r["c"]), parse_rational(r["r"]))
    else:
        raise SpecError(f"unknown rule type {r['type']!r}")
    return TailSequence(parse_rational(d["limit"]), Direction(d["direction"]), rule,
                        d.get("term_multiplicity", 1))


# -- operations ------------------------------------------------------------


class Source(NamedTuple):
    """Where a materialized eigenvalue came from: ``("atom", i, copy)`` or ``("tail", j, n)``."""

    kind: str
    index: int
    position: int


def _atom_stream(i: int, atom: EigenvalueAtom, k: int):
    count = k if atom.infinite else min(atom.multiplicity, k)
    for c in range(1, count + 1):
        yield atom.value, Source("atom", i, c)


def _tail_stream(j: int, tail: TailSequence, k: int):
    m = tail.term_multiplicity
    if tail.decreasing:
        emitted = 0
        for n in itertools.count(1):
            v = tail.term(n)
            for _ in range(m):
                yield v, Source("tail", j, n)
                emitted += 1
                if emitted == k:
                    return
    else:
        # no largest element exists; use the first ceil(k/m) terms, largest first
        last = -(-k // m)
        emitted = 0
        for n in range(last, 0, -1):
            v = tail.term(n)
            for _ in range(m):
                yield v, Source("tail", j, n)
                emitted += 1
                if emitted == k:
                    return


def top_k_values(spec: SpectrumSpec, k: int) -> list[tuple[Fraction, Source]]:
    """The ``k`` largest eigenvalues counted with multiplicity, non-increasing.

    Ties go to atoms before tails, then declaration order. An increasing tail
    has no largest element, so it contributes its first ``k`` terms in index
    order, which is the truncation the numeric layer materializes.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    streams = [_atom_stream(i, a, k) for i, a in enumerate(spec.atoms)]
    streams += [_tail_stream(j, t, k) for j, t in enumerate(spec.tails)]
    merged = heapq.merge(*streams, key=lambda item: -item[0])
    return list(itertools.islice(merged, k))


@dataclass(frozen=True)
class LimitPoint:
    value: Fraction
    approach: Approach
    tails: tuple


@dataclass(frozen=True)
class LimitPointReport:
    points: tuple = ()

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def values(self) -> tuple:
        return tuple(p.value for p in self.points)


def limit_points(spec: SpectrumSpec) -> LimitPointReport:
    groups: dict[Fraction, list[int]] = {}
    for j, t in enumerate(spec.tails):
        groups.setdefault(t.limit, []).append(j)
    points = []
    for value in sorted(groups):
        idx = tuple(groups[value])
        dirs = {spec.tails[j].direction for j in idx}
        if dirs == {Direction.DECREASING}:
            approach = Approach.FROM_ABOVE
        elif dirs == {Direction.INCREASING}:
            approach = Approach.FROM_BELOW
        else:
            approach = Approach.BOTH
        points.append(LimitPoint(value, approach, idx))
    return LimitPointReport(tuple(points))


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the four spectral conditions with the offending parts.

    ``sup_is_max``: every subset of eigenvalues attains its supremum.
    ``single_limit``: at most one limit point, approached only from above.
    ``single_infinite``: at most one eigenvalue of infinite multiplicity.
    ``limit_matches_infinite``: a limit point and an infinite eigenvalue coincide.
    """

    sup_is_max: bool
    single_limit: bool
    single_infinite: bool
    limit_matches_infinite: bool
    increasing_tails: tuple = ()
    limit_tails: tuple = ()
    infinite_atoms: tuple = ()
    mismatch_tails: tuple = ()
    mismatch_atoms: tuple = ()

    @property
    def passed(self) -> tuple:
        return (self.sup_is_max, self.single_limit, self.single_infinite,
                self.limit_matches_infinite)

    @property
    def all_pass(self) -> bool:
        return all(self.passed)

    @property
    def first_failure(self):
        """Index 0..3 of the first failing condition, or ``None``."""
        for i, ok in enumerate(self.passed):
            if not ok:
                return i
        return None

    def to_json(self) -> dict:
        return {
            "i": self.sup_is_max, "ii": self.single_limit,
            "iii": self.single_infinite, "iv": self.limit_matches_infinite,
            "offenders": {
                "i": {"tails": list(self.increasing_tails)},
                "ii": {"tails": list(self.limit_tails)},
                "iii": {"atoms": list(self.infinite_atoms)},
                "iv": {"tails": list(self.mismatch_tails), "atoms": list(self.mismatch_atoms)},
            },
        }


def check_conditions(spec: SpectrumSpec) -> ConditionReport:
    increasing = tuple(j for j, t in enumerate(spec.tails) if not t.decreasing)
    report = limit_points(spec)

    if len(report) > 1:
        limit_tails = tuple(range(len(spec.tails)))
    else:
        limit_tails = increasing
    single_limit = len(report) <= 1 and not increasing

    inf_values: dict[Fraction, list[int]] = {}
    for i, a in enumerate(spec.atoms):
        if a.infinite:
            inf_values.setdefault(a.value, []).append(i)
    single_infinite = len(inf_values) <= 1
    infinite_atoms = () if single_infinite else tuple(
        i for v in sorted(inf_values) for i in inf_values[v])

    mismatch_tails: tuple = ()
    mismatch_atoms: tuple = ()
    if len(report) == 1 and len(inf_values) == 1:
        (limit,) = report.values
        (hat,) = inf_values
        if limit != hat:
            mismatch_tails = report.points[0].tails
            mismatch_atoms = tuple(inf_values[hat])

    return ConditionReport(
        sup_is_max=not increasing,
        single_limit=single_limit,
        single_infinite=single_infinite,
        limit_matches_infinite=not mismatch_atoms,
        increasing_tails=increasing,
        limit_tails=() if single_limit else limit_tails,
        infinite_atoms=infinite_atoms,
        mismatch_tails=mismatch_tails,
        mismatch_atoms=mismatch_atoms,
    )


class SupNorm(NamedTuple):
    norm: Fraction
    attained: bool


def sup_norm(spec: SpectrumSpec) -> SupNorm:
    """Operator norm as the supremum of the eigenvalues, and whether it is an eigenvalue."""
    realized = [a.value for a in spec.atoms]
    realized += [t.term(1) for t in spec.tails if t.decreasing]
    approached = [t.limit for t in spec.tails if not t.decreasing]
    best = max(realized) if realized else None
    bound = max(approached) if approached else None
    if bound is None:
        return SupNorm(best, True)
    if best is None or bound > best:
        return SupNorm(bound, False)
    return SupNorm(best, True)
