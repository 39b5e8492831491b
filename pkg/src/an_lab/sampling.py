"""Seeded random spectra for property and acceptance suites."""
from __future__ import annotations

import random
from fractions import Fraction

from an_lab.spectrum import (
    INFINITE,
    Direction,
    EigenvalueAtom,
    Geometric,
    Harmonic,
    SpectrumSpec,
    TailSequence,
)


def random_rational(rng: random.Random, hi: int = 4, max_den: int = 6) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, hi * den), den)


def random_rule(rng: random.Random):
    if rng.random() < 0.5:
        return Harmonic(Fraction(rng.randint(1, 6), rng.randint(1, 4)), rng.randint(1, 3))
    return Geometric(Fraction(rng.randint(1, 6), rng.randint(1, 4)),
                     Fraction(rng.randint(1, 4), 5))


def random_decreasing_tail(rng: random.Random, limit: Fraction) -> TailSequence:
    return TailSequence(limit, Direction.DECREASING, random_rule(rng), rng.choice([1, 1, 1, 2]))


def random_valid_spec(rng: random.Random, max_atoms: int = 6, max_tails: int = 1) -> SpectrumSpec:
    """A spectrum passing all four conditions, covering the four structural cases.

    Finite atoms are sometimes placed exactly at the limit point or the
    infinite eigenvalue to exercise the zero-shift bookkeeping.
    """
    has_tail = max_tails > 0 and rng.random() < 0.5
    has_inf = rng.random() < 0.5
    anchor = random_rational(rng)
    n_atoms = rng.randint(0 if (has_tail or has_inf) else 1, max_atoms - int(has_inf))

    atoms = []
    for _ in range(n_atoms):
        value = anchor if rng.random() < 0.15 else random_rational(rng)
        atoms.append(EigenvalueAtom(value, rng.randint(1, 3)))
    if has_inf:
        atoms.insert(rng.randint(0, len(atoms)), EigenvalueAtom(anchor, INFINITE))
    tails = []
    if has_tail:
        tails = [random_decreasing_tail(rng, anchor) for _ in range(rng.randint(1, max_tails))]
    return SpectrumSpec(atoms, tails)


def random_spec(rng: random.Random, max_atoms: int = 5, max_tails: int = 2) -> SpectrumSpec:
    """Unconstrained spectrum: tails of either direction, any number of infinite atoms."""
    atoms = [EigenvalueAtom(random_rational(rng), rng.choice([1, 2, INFINITE]))
             for _ in range(rng.randint(0, max_atoms))]
    tails = []
    for _ in range(rng.randint(0 if atoms else 1, max_tails)):
        if rng.random() < 0.7:
            tails.append(random_decreasing_tail(rng, random_rational(rng)))
        else:
            rule = random_rule(rng)
            limit = rule.offset(1) + random_rational(rng)
            tails.append(TailSequence(limit, Direction.INCREASING, rule))
    return SpectrumSpec(atoms, tails)
