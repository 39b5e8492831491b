import itertools
import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from an_lab.errors import SpecError
from an_lab.sampling import random_spec, random_valid_spec
from an_lab.spectrum import (
    INFINITE,
    Approach,
    Direction,
    EigenvalueAtom,
    Geometric,
    Harmonic,
    SpectrumSpec,
    TailSequence,
    check_conditions,
    limit_points,
    parse_rational,
    sup_norm,
    top_k_values,
)

DEC, INC = Direction.DECREASING, Direction.INCREASING
DIAG_HALF_ONES = SpectrumSpec([EigenvalueAtom("1/2"), EigenvalueAtom(1, INFINITE)])
TWO_LIMITS = SpectrumSpec(tails=[TailSequence(1, DEC, Harmonic("1/2")),
                                 TailSequence(2, DEC, Harmonic(1))])
INC_TO_TWO = SpectrumSpec(tails=[TailSequence(2, INC, Harmonic(1))])
ZERO = SpectrumSpec([EigenvalueAtom(0)])


def values(spec, k):
    return [v for v, _ in top_k_values(spec, k)]


# -- construction -------------------------------------------------------------


def test_parse_rational_forms():
    assert parse_rational("3/6") == Q(1, 2)
    assert parse_rational(4) == 4
    assert parse_rational("-2") == -2
    with pytest.raises(SpecError):
        parse_rational(0.5)
    with pytest.raises(SpecError):
        parse_rational("1/0")


def test_atom_rejects_negative_and_zero_multiplicity():
    with pytest.raises(SpecError):
        EigenvalueAtom(-1)
    with pytest.raises(SpecError):
        EigenvalueAtom(1, 0)


def test_empty_spectrum_rejected():
    with pytest.raises(SpecError):
        SpectrumSpec()


def test_increasing_tail_must_stay_nonnegative():
    with pytest.raises(SpecError):
        TailSequence(Q(1, 2), INC, Harmonic(1))
    TailSequence(1, INC, Harmonic(1))  # term(1) = 0 is allowed


def test_geometric_ratio_bounds():
    with pytest.raises(SpecError):
        Geometric(1, 1)
    with pytest.raises(SpecError):
        Geometric(1, 0)


def test_tail_terms():
    t = TailSequence(1, INC, Geometric("1/2", "1/2"))
    assert [t.term(n) for n in (1, 2)] == [Q(3, 4), Q(7, 8)]
    d = TailSequence(0, DEC, Harmonic(3, 2))
    assert d.term(3) == Q(1, 3)


def test_json_round_trip():
    spec = SpectrumSpec([EigenvalueAtom("1/3", 2), EigenvalueAtom(1, INFINITE)],
                        [TailSequence(1, DEC, Geometric(2, "1/3"), 2)])
    assert SpectrumSpec.from_json(spec.to_json()) == spec


def test_json_schema_diagnostics():
    with pytest.raises(SpecError, match="direction"):
        SpectrumSpec.from_json({"atoms": [], "tails": [
            {"limit": 1, "direction": "sideways", "rule": {"type": "harmonic", "c": 1, "p": 1}}]})
    with pytest.raises(SpecError):
        SpectrumSpec.from_json({"atoms": [{"value": 0.5, "multiplicity": 1}]})


# -- top_k_values -------------------------------------------------------------


def test_top_k_examples():
    assert values(DIAG_HALF_ONES, 3) == [1, 1, 1]
    assert values(ZERO, 1) == [0]
    single = SpectrumSpec(tails=[TailSequence(1, DEC, Harmonic("1/2"))])
    assert values(single, 3) == [Q(3, 2), Q(5, 4), Q(7, 6)]


def test_top_k_finite_supply_then_stops():
    spec = SpectrumSpec([EigenvalueAtom(2, 2), EigenvalueAtom(1)])
    assert values(spec, 10) == [2, 2, 1]


def test_top_k_tie_break_atoms_first_then_declaration():
    spec = SpectrumSpec([EigenvalueAtom(Q(3, 2))], [TailSequence(1, DEC, Harmonic("1/2"))])
    top = top_k_values(spec, 2)
    assert [s.kind for _, s in top] == ["atom", "tail"]


def test_top_k_term_multiplicity():
    spec = SpectrumSpec(tails=[TailSequence(0, DEC, Harmonic(1), 2)])
    assert values(spec, 4) == [1, 1, Q(1, 2), Q(1, 2)]


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(1, 60))
def test_top_k_prefix_extension(rnd, k):
    # increasing tails have no largest element, so the prefix property only
    # makes sense without them
    spec = random_valid_spec(rnd)
    a, b = values(spec, k), values(spec, k + 1)
    assert b[:len(a)] == a
    assert all(x >= y for x, y in zip(b, b[1:]))
    if len(b) > len(a):
        assert b[-1] <= a[-1]


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(1, 40))
def test_top_k_sorted_and_bounded_by_norm(rnd, k):
    spec = random_spec(rnd)
    vs = values(spec, k)
    assert all(x >= y for x, y in zip(vs, vs[1:]))
    assert all(v <= sup_norm(spec).norm for v in vs)


# -- limit points -------------------------------------------------------------


def test_limit_points_examples():
    assert len(limit_points(DIAG_HALF_ONES)) == 0
    pts = limit_points(TWO_LIMITS).points
    assert [(p.value, p.approach) for p in pts] == [(1, Approach.FROM_ABOVE),
                                                     (2, Approach.FROM_ABOVE)]
    (p,) = limit_points(INC_TO_TWO).points
    assert (p.value, p.approach) == (2, Approach.FROM_BELOW)


def test_limit_points_aggregate_both_directions():
    spec = SpectrumSpec(tails=[TailSequence(1, DEC, Harmonic(1)), TailSequence(1, INC, Harmonic(1))])
    (p,) = limit_points(spec).points
    assert p.approach is Approach.BOTH and p.tails == (0, 1)


# -- conditions ---------------------------------------------------------------


def test_conditions_examples():
    assert check_conditions(DIAG_HALF_ONES).all_pass
    proj = SpectrumSpec([EigenvalueAtom(0, INFINITE), EigenvalueAtom(1, INFINITE)])
    r = check_conditions(proj)
    assert r.passed == (True, True, False, True)
    assert r.infinite_atoms == (0, 1)
    r = check_conditions(TWO_LIMITS)
    assert r.passed == (True, False, True, True)
    assert r.limit_tails == (0, 1)


def test_condition_i_increasing_tail():
    r = check_conditions(INC_TO_TWO)
    assert r.first_failure == 0 and r.increasing_tails == (0,)
    assert not r.single_limit  # approached from below


def test_condition_iv_mismatch():
    spec = SpectrumSpec([EigenvalueAtom(3, INFINITE)], [TailSequence(1, DEC, Harmonic(1))])
    r = check_conditions(spec)
    assert r.passed == (True, True, True, False)
    assert (r.mismatch_tails, r.mismatch_atoms) == ((0,), (0,))
    ok = SpectrumSpec([EigenvalueAtom(1, INFINITE)], [TailSequence(1, DEC, Harmonic(1))])
    assert check_conditions(ok).all_pass


@settings(max_examples=50, deadline=None)
@given(st.randoms(use_true_random=False))
def test_check_conditions_pure(rnd):
    spec = random_spec(rnd)
    assert check_conditions(spec) == check_conditions(SpectrumSpec(spec.atoms, spec.tails))


# -- sup norm -----------------------------------------------------------------


def test_sup_norm_examples():
    assert sup_norm(DIAG_HALF_ONES) == (1, True)
    assert sup_norm(INC_TO_TWO) == (2, False)
    assert sup_norm(ZERO) == (0, True)


def test_sup_norm_atom_at_increasing_limit_is_attained():
    spec = SpectrumSpec([EigenvalueAtom(2)], [TailSequence(2, INC, Harmonic(1))])
    assert sup_norm(spec) == (2, True)


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_unattained_norm_comes_from_increasing_limit(rnd):
    spec = random_spec(rnd)
    norm, attained = sup_norm(spec)
    if not attained:
        assert any(t.direction is INC and t.limit == norm for t in spec.tails)
    else:
        assert norm in [v for v, _ in top_k_values(spec, 1)] or any(
            a.value == norm for a in spec.atoms)


# -- brute-force oracle over atom-only spectra --------------------------------


ORACLE_VALUES = (Q(0), Q(1, 2), Q(1), Q(2))
ORACLE_CHOICES = [(v, m) for v in ORACLE_VALUES for m in (1, INFINITE)]


def _oracle_an(atoms) -> bool:
    # with finitely many atom values there are no limit points, and every
    # subset of eigenvalues is finite in value, so only distinct
    # infinite-multiplicity values matter
    return len({v for v, m in atoms if m is INFINITE}) <= 1


def test_atom_only_exhaustive_oracle():
    checked = 0
    for size in range(1, 6):
        for atoms in itertools.product(ORACLE_CHOICES, repeat=size):
            spec = SpectrumSpec([EigenvalueAtom(v, m) for v, m in atoms])
            r = check_conditions(spec)
            assert r.sup_is_max and r.single_limit and r.limit_matches_infinite
            assert r.all_pass == _oracle_an(atoms), atoms
            checked += 1
    assert checked == sum(8**s for s in range(1, 6))


def test_random_valid_specs_pass_conditions():
    rng = random.Random(7)
    for _ in range(300):
        assert check_conditions(random_valid_spec(rng)).all_pass
