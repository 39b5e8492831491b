import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from an_lab.errors import DegenerateTails, EqualValues, WitnessError
from an_lab.sampling import random_decreasing_tail, random_rational, random_rule
from an_lab.spectrum import Direction, Geometric, Harmonic, TailSequence
from an_lab.witness import (
    WitnessKind,
    basis_rows_to_csv,
    emit_basis_vectors,
    witness_increasing,
    witness_limit_vs_infmult,
    witness_two_infmult,
    witness_two_limit_points,
)

DEC, INC = Direction.DECREASING, Direction.INCREASING
TAIL_A = TailSequence(1, DEC, Harmonic("1/2"))  # 1 + 1/(2n)
TAIL_B = TailSequence(2, DEC, Harmonic(1))  # 2 + 1/n


def identity_holds(plan, n):
    c2 = plan.c_squared(n)
    return c2 * plan.a(n) ** 2 + (1 - c2) * plan.b(n) ** 2 == plan.gamma(n) ** 2


# -- frozen values (hand-derived closed forms) --------------------------------


def test_two_limit_points_frozen():
    plan = witness_two_limit_points(TAIL_A, TAIL_B)
    assert plan.kind is WitnessKind.TWO_LIMIT_POINTS
    assert plan.gamma(1) == Q(7, 4)
    assert plan.c_squared(1) == Q(95, 108)
    assert Q(95, 108) * Q(9, 4) + Q(13, 108) * 9 == Q(49, 16)
    assert plan.gamma(10) == Q(79, 40)
    assert plan.sup_value == 2


def test_two_infmult_frozen():
    plan = witness_two_infmult(0, 1)
    assert plan.gamma(1) == Q(1, 2) and plan.c_squared(1) == Q(3, 4)
    for n in range(1, 50):
        assert plan.gamma(n) == 1 - Q(1, 2 * n)
        assert plan.c_squared(n) == Q(1, n) - Q(1, 4 * n * n)


def test_limit_below_frozen():
    plan = witness_limit_vs_infmult(1, 3, TailSequence(1, DEC, Harmonic(1)))
    assert plan.kind is WitnessKind.LIMIT_BELOW
    assert plan.sup_value == 3
    assert [plan.gamma(n) for n in (1, 2)] == [2, Q(5, 2)]
    assert plan.c_squared(1) == 1
    assert plan.c_squared(2) == Q(11, 27)


def test_limit_above_frozen():
    plan = witness_limit_vs_infmult(2, 1, TailSequence(2, DEC, Harmonic(1)))
    assert plan.kind is WitnessKind.LIMIT_ABOVE
    assert plan.sup_value == 2 and plan.gamma(1) == Q(3, 2)
    assert plan.gamma(4) == 2 - Q(1, 8)
    assert plan.c_on == "g"


def test_increasing_frozen():
    plan = witness_increasing(TailSequence(2, INC, Harmonic(1)))
    assert plan.sup_value == 2
    assert [plan.gamma(n) for n in (1, 2, 100)] == [1, Q(3, 2), Q(199, 100)]
    assert plan.c_squared(7) == 1
    geo = witness_increasing(TailSequence(1, INC, Geometric("1/2", "1/2")))
    assert geo.sup_value == 1 and geo.gamma(1) == Q(3, 4)


# -- errors and re-indexing ---------------------------------------------------


def test_errors():
    with pytest.raises(DegenerateTails):
        witness_two_limit_points(TAIL_A, TailSequence(1, DEC, Harmonic(2)))
    with pytest.raises(WitnessError):
        witness_two_limit_points(TAIL_B, TAIL_A)
    with pytest.raises(EqualValues):
        witness_limit_vs_infmult(1, 1, TAIL_A)
    with pytest.raises(WitnessError):
        witness_increasing(TAIL_A)


def test_two_limit_reindexes_when_first_term_exceeds_b():
    tail_a = TailSequence(1, DEC, Harmonic(4))  # 5, 3, 7/3, 2, 9/5, ...
    plan = witness_two_limit_points(tail_a, TAIL_B)
    assert plan.a(1) == Q(9, 5)
    assert plan.a_rule.offset == 4
    rows = emit_basis_vectors(plan, 3)
    assert [r.f_index for r in rows] == [5, 6, 7]


def test_limit_below_reindexes_to_keep_c_bounded():
    tail = TailSequence(1, DEC, Harmonic(5))  # 6, 7/2, 8/3, 9/4, ...
    plan = witness_limit_vs_infmult(1, 3, tail)
    for n in range(1, 200):
        assert 0 <= plan.c_squared(n) <= 1


# -- emission -----------------------------------------------------------------


def test_emit_single_row():
    (row,) = emit_basis_vectors(witness_two_infmult(0, 1), 1)
    assert row.c_squared == Q(3, 4) and (row.f_index, row.g_index) == (1, 1)
    assert row.f_coefficient == pytest.approx(3 ** 0.5 / 2)
    assert row.g_coefficient == pytest.approx(0.5)


def test_emit_limit_above_swaps_roles():
    plan = witness_limit_vs_infmult(2, 1, TailSequence(2, DEC, Harmonic(1)))
    row = emit_basis_vectors(plan, 1)[0]
    assert row.g_coefficient == pytest.approx(float(plan.c_squared(1)) ** 0.5)


def test_csv_format():
    text = basis_rows_to_csv(emit_basis_vectors(witness_two_limit_points(TAIL_A, TAIL_B), 2))
    assert text.splitlines()[:2] == ["n,c_n_squared,f_index,g_index", "1,95/108,1,1"]
    inc = basis_rows_to_csv(emit_basis_vectors(witness_increasing(TailSequence(2, INC, Harmonic(1))), 1))
    assert inc.splitlines()[1] == "1,1/1,1,"


def test_emit_rejects_zero():
    with pytest.raises(ValueError):
        emit_basis_vectors(witness_two_infmult(0, 1), 0)


def test_plan_json_keys():
    out = witness_two_limit_points(TAIL_A, TAIL_B).to_json()
    assert set(out) == {"kind", "a_rule", "b_rule", "gamma_rule", "c_squared_rule",
                        "pairing", "sup_value"}
    assert out["gamma_rule"] == {"type": "half_harmonic", "base": 2, "delta": "-1/2"}


# -- plan invariants over random instances ------------------------------------


def _random_plan(rng):
    kind = rng.randrange(5)
    lo = random_rational(rng, hi=3)
    hi = lo + random_rational(rng, hi=2) + Q(1, rng.randint(1, 5))
    if kind == 0:
        rule = random_rule(rng)
        return witness_increasing(TailSequence(rule.offset(1) + hi, INC, rule))
    if kind == 1:
        return witness_two_limit_points(random_decreasing_tail(rng, lo),
                                        random_decreasing_tail(rng, hi))
    if kind == 2:
        return witness_two_infmult(lo, hi)
    if kind == 3:
        return witness_limit_vs_infmult(lo, hi, random_decreasing_tail(rng, lo))
    return witness_limit_vs_infmult(hi, lo, random_decreasing_tail(rng, hi))


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_plan_invariants(rnd):
    plan = _random_plan(rnd)
    prev = None
    for n in range(1, 60):
        g = plan.gamma(n)
        assert identity_holds(plan, n)
        assert 0 <= plan.c_squared(n) <= 1
        assert g < plan.sup_value
        if prev is not None:
            assert g > prev
        prev = g
    if plan.kind is not WitnessKind.INCREASING_APPROACH:
        n = rnd.randint(1, 10**6)
        assert plan.sup_value - plan.gamma(n) == plan.gap_constant / n


def test_identity_deterministic_sample():
    rng = random.Random(3)
    for _ in range(100):
        plan = _random_plan(rng)
        assert all(identity_holds(plan, n) for n in (1, 2, 17, 1000))
