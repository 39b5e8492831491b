"""Subspaces on which a positive diagonal operator does not attain its norm.

Each plan pairs two eigenvector families ``f_n`` and ``g_n`` and spans
``e_n = c_n f_n + sqrt(1 - c_n^2) g_n`` (with the roles swapped when the
infinite eigenvalue sits below the limit point). The weights are chosen so
that ``||T e_n|| = gamma_n``, a strictly increasing sequence whose supremum
is never reached by any unit vector of the span.

Plans hold closed-form rules; ``c_n^2`` stays an exact rational and square
roots are only taken when a consumer asks for float coefficients.
"""
from __future__ import annotations

import csv
import enum
import io
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from an_lab.errors import DegenerateTails, EqualValues, WitnessError
from an_lab.spectrum import TailSequence, format_rational, tail_to_json

__all__ = [
    "BasisRow",
    "ConstantRule",
    "HalfHarmonicGamma",
    "TailRule",
    "WitnessKind",
    "WitnessPlan",
    "basis_rows_to_csv",
    "emit_basis_vectors",
    "witness_increasing",
    "witness_limit_vs_infmult",
    "witness_two_infmult",
    "witness_two_limit_points",
]


class WitnessKind(enum.Enum):
    INCREASING_APPROACH = "IncreasingApproach"
    TWO_LIMIT_POINTS = "TwoLimitPoints"
    TWO_INFINITE_MULTIPLICITIES = "TwoInfiniteMultiplicities"
    LIMIT_BELOW = "LimitVsInfMult_LimitBelow"
    LIMIT_ABOVE = "LimitVsInfMult_LimitAbove"


@dataclass(frozen=True)
class ConstantRule:
    value: Fraction

    def __call__(self, n: int) -> Fraction:
        return self.value

    def to_json(self):
        return {"type": "constant", "value": format_rational(self.value)}


@dataclass(frozen=True)
class TailRule:
    """``n -> tail.term(n + offset)``; ``offset`` skips leading terms that are too large."""

    tail: TailSequence
    offset: int = 0
    source: str = ""

    def __call__(self, n: int) -> Fraction:
        return self.tail.term(n + self.offset)

    def to_json(self):
        return {"type": "tail", "tail": tail_to_json(self.tail), "offset": self.offset,
                "source": self.source}


@dataclass(frozen=True)
class HalfHarmonicGamma:
    """``gamma_n = base + delta / (2n)`` with ``delta < 0``."""

    base: Fraction
    delta: Fraction

    def __call__(self, n: int) -> Fraction:
        return self.base + self.delta / (2 * n)

    def to_json(self):
        return {"type": "half_harmonic", "base": format_rational(self.base),
                "delta": format_rational(self.delta)}


Rule = Union[ConstantRule, TailRule, HalfHarmonicGamma]


@dataclass(frozen=True)
class WitnessPlan:
    """Closed-form recipe for a non-attaining subspace.

    ``a_rule`` gives the eigenvalue under the ``c_n``-weighted vector and
    ``b_rule`` the one under the ``sqrt(1 - c_n^2)``-weighted vector, so that
    ``c_n^2 a_n^2 + (1 - c_n^2) b_n^2 = gamma_n^2`` for every plan.
    ``c_on`` names which family (``"f"`` or ``"g"``) carries ``c_n``.
    """

    kind: WitnessKind
    a_rule: Rule
    b_rule: Rule
    gamma_rule: Rule
    sup_value: Fraction
    f_source: str
    g_source: Optional[str]
    c_on: str = "f"

    def a(self, n: int) -> Fraction:
        return self.a_rule(n)

    def b(self, n: int) -> Fraction:
        return self.b_rule(n)

    def gamma(self, n: int) -> Fraction:
        return self.gamma_rule(n)

    def c_squared(self, n: int) -> Fraction:
        return self._c_squared(self.a(n), self.b(n), self.gamma(n))

    def _c_squared(self, a, b, g) -> Fraction:
        if self.kind is WitnessKind.INCREASING_APPROACH:
            return Fraction(1)
        # (b^2 - g^2) / (b^2 - a^2) over a common denominator, normalized once
        an, ad = a.numerator, a.denominator
        bn, bd = b.numerator, b.denominator
        gn, gd = g.numerator, g.denominator
        num = (bn * bn * gd * gd - gn * gn * bd * bd) * ad * ad
        den = (bn * bn * ad * ad - an * an * bd * bd) * gd * gd
        return Fraction(num, den)

    def f_value(self, n: int) -> Fraction:
        return self.a(n) if self.c_on == "f" else self.b(n)

    def g_value(self, n: int) -> Fraction:
        return self.b(n) if self.c_on == "f" else self.a(n)

    @property
    def gap_constant(self) -> Fraction:
        """``sup_value - gamma_n`` times ``n`` (exact for the half-harmonic gammas)."""
        if isinstance(self.gamma_rule, HalfHarmonicGamma):
            return -self.gamma_rule.delta / 2
        raise ValueError("gap is not of the form const/n for this plan")

    def to_json(self) -> dict:
        if self.kind is WitnessKind.INCREASING_APPROACH:
            c2 = {"type": "one"}
        else:
            c2 = {"type": "interpolate",
                  "formula": "(b_n^2 - gamma_n^2) / (b_n^2 - a_n^2)"}
        return {
            "kind": self.kind.value,
            "a_rule": self.a_rule.to_json(),
            "b_rule": self.b_rule.to_json(),
            "gamma_rule": self.gamma_rule.to_json(),
            "c_squared_rule": c2,
            "pairing": {"f": self.f_source, "g": self.g_source, "c_on": self.c_on},
            "sup_value": format_rational(self.sup_value),
        }


def witness_increasing(tail: TailSequence, source: str = "tail") -> WitnessPlan:
    """The span of an increasing run of eigenvectors: the norm is the unreached limit."""
    if tail.decreasing:
        raise WitnessError("witness_increasing needs an increasing tail")
    rule = TailRule(tail, 0, source)
    return WitnessPlan(
        kind=WitnessKind.INCREASING_APPROACH,
        a_rule=rule,
        b_rule=ConstantRule(tail.limit),
        gamma_rule=rule,
        sup_value=tail.limit,
        f_source=source,
        g_source=None,
    )


def _first_index(tail: TailSequence, below: Fraction, strict: bool = True) -> int:
    # terms decrease to tail.limit < below (or <=), so the scan terminates
    for m in itertools.count(1):
        v = tail.term(m)
        if v < below or (not strict and v == below):
            return m
    raise AssertionError("unreachable")


def witness_two_limit_points(tail_a: TailSequence, tail_b: TailSequence,
                             source_a: str = "tail_a", source_b: str = "tail_b") -> WitnessPlan:
    """Pair two decreasing tails with limits ``a < b``; the span never reaches ``b``."""
    if not (tail_a.decreasing and tail_b.decreasing):
        raise WitnessError("both tails must be decreasing")
    a, b = tail_a.limit, tail_b.limit
    if a == b:
        raise DegenerateTails(f"both tails converge to {a}")
    if a > b:
        raise WitnessError(f"expected limit of tail_a < limit of tail_b, got {a} > {b}")
    m = _first_index(tail_a, b)
    a_rule = TailRule(tail_a, m - 1, source_a)
    a1 = a_rule(1)
    return WitnessPlan(
        kind=WitnessKind.TWO_LIMIT_POINTS,
        a_rule=a_rule,
        b_rule=TailRule(tail_b, 0, source_b),
        gamma_rule=HalfHarmonicGamma(b, a1 - b),
        sup_value=b,
        f_source=source_a,
        g_source=source_b,
    )


def witness_two_infmult(beta1, beta2, source_1: str = "atom_1",
                        source_2: str = "atom_2") -> WitnessPlan:
    """Mix two infinite eigenspaces ``beta1 < beta2``; the span never reaches ``beta2``."""
    beta1, beta2 = Fraction(beta1), Fraction(beta2)
    if not beta1 < beta2:
        raise WitnessError(f"expected beta1 < beta2, got {beta1}, {beta2}")
    return WitnessPlan(
        kind=WitnessKind.TWO_INFINITE_MULTIPLICITIES,
        a_rule=ConstantRule(beta1),
        b_rule=ConstantRule(beta2),
        gamma_rule=HalfHarmonicGamma(beta2, beta1 - beta2),
        sup_value=beta2,
        f_source=source_1,
        g_source=source_2,
    )


def witness_limit_vs_infmult(limit, infmult, tail: TailSequence,
                             tail_source: str = "tail", atom_source: str = "atom") -> WitnessPlan:
    """A limit point and an infinite eigenvalue that differ.

    Limit below the infinite eigenvalue: ``c_n`` weights the tail vector and
    ``gamma_n`` climbs to the infinite eigenvalue. Limit above: ``c_n``
    weights the infinite-eigenspace vector and ``gamma_n`` climbs to the limit.
    """
    beta, hat = Fraction(limit), Fraction(infmult)
    if beta == hat:
        raise EqualValues(f"limit point equals the infinite eigenvalue {beta}")
    if not tail.decreasing or tail.limit != beta:
        raise WitnessError("tail must be decreasing with the given limit")
    if beta < hat:
        gamma = HalfHarmonicGamma(hat, beta - hat)
        # need a_n <= gamma_n for c_n^2 <= 1; gamma increases and a decreases, so n = 1 suffices
        m = _first_index(tail, gamma(1), strict=False)
        return WitnessPlan(
            kind=WitnessKind.LIMIT_BELOW,
            a_rule=TailRule(tail, m - 1, tail_source),
            b_rule=ConstantRule(hat),
            gamma_rule=gamma,
            sup_value=hat,
            f_source=tail_source,
            g_source=atom_source,
            c_on="f",
        )
    return WitnessPlan(
        kind=WitnessKind.LIMIT_ABOVE,
        a_rule=ConstantRule(hat),
        b_rule=TailRule(tail, 0, tail_source),
        gamma_rule=HalfHarmonicGamma(beta, hat - beta),
        sup_value=beta,
        f_source=tail_source,
        g_source=atom_source,
        c_on="g",
    )


class BasisRow(NamedTuple):
    """One vector ``e_n``; indices count terms (or copies) within each source."""

    n: int
    c_squared: Fraction
    f_index: int
    g_index: Optional[int]
    c_on: str = "f"
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    gamma: Optional[Fraction] = None

    @property
    def c(self) -> float:
        return math.sqrt(self.c_squared)

    @property
    def s(self) -> float:
        return math.sqrt(1 - self.c_squared)

    @property
    def f_coefficient(self) -> float:
        return self.c if self.c_on == "f" else self.s

    @property
    def g_coefficient(self) -> float:
        return self.s if self.c_on == "f" else self.c


def emit_basis_vectors(plan: WitnessPlan, N: int) -> list[BasisRow]:
    if N < 1:
        raise ValueError("N must be >= 1")
    f_rule = plan.a_rule if plan.c_on == "f" else plan.b_rule
    f_off = getattr(f_rule, "offset", 0)
    rows = []
    for n in range(1, N + 1):
        a, b, g = plan.a(n), plan.b(n), plan.gamma(n)
        g_index = None if plan.g_source is None else n
        rows.append(BasisRow(n, plan._c_squared(a, b, g), n + f_off, g_index, plan.c_on, a, b, g))
    return rows


def basis_rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "c_n_squared", "f_index", "g_index"])
    for r in rows:
        c2 = r.c_squared
        w.writerow([r.n, f"{c2.numerator}/{c2.denominator}", r.f_index,
                    "" if r.g_index is None else r.g_index])
    return buf.getvalue()
