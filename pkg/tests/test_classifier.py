import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from an_lab.classifier import (
    ANVerdict,
    ConstantModulusFamily,
    DiagonalOperatorSpec,
    FixedComplex,
    PhasedTail,
    Reason,
    build_witness,
    classify_diagonal,
    classify_norming,
    classify_positive,
    modulus_spectrum,
)
from an_lab.decomposer import add_decompositions, decompose, reconstruct
from an_lab.errors import NoWitness, SpecError
from an_lab.models import get_model
from an_lab.sampling import random_rational, random_rule, random_spec, random_valid_spec
from an_lab.spectrum import (
    INFINITE,
    Direction,
    EigenvalueAtom,
    Harmonic,
    SpectrumSpec,
    TailSequence,
    sup_norm,
    top_k_values,
)
from an_lab.witness import WitnessKind

DEC, INC = Direction.DECREASING, Direction.INCREASING


def test_norming_examples():
    assert classify_norming(get_model("ramesh-counterexample").spec) == (True, 1)
    assert classify_norming(get_model("sum-not-an").spec) == (False, None)
    assert classify_norming(SpectrumSpec([EigenvalueAtom(0)])) == (True, 0)


def test_classify_positive_examples():
    v = classify_positive(get_model("ramesh-counterexample").spec)
    assert v.satisfied and v.reason is Reason.FINITE_RANK_PLUS_SCALAR
    d = v.decomposition
    assert (d.alpha, d.f_atoms, d.k_atoms, d.k_tails) == (1, ((Q(-1, 2), 1),), (), ())

    v = classify_positive(get_model("two-limit-blocks").spec)
    assert not v.satisfied and v.reason is Reason.FAIL_TWO_LIMIT_POINTS
    assert v.witness.kind is WitnessKind.TWO_LIMIT_POINTS

    v = classify_positive(SpectrumSpec([EigenvalueAtom(5, 2)]))
    assert v.satisfied and v.decomposition.alpha == 0
    assert v.decomposition.f_atoms == ((5, 2),)


def test_compact_reason_when_tail_present():
    spec = SpectrumSpec([EigenvalueAtom("1/4")], [TailSequence(1, DEC, Harmonic("1/2"))])
    v = classify_positive(spec)
    assert v.reason is Reason.COMPACT_PLUS_SCALAR_PLUS_FINITE_RANK


@pytest.mark.parametrize("spec, reason, kind", [
    (SpectrumSpec(tails=[TailSequence(2, INC, Harmonic(1))]),
     Reason.FAIL_INCREASING_APPROACH, WitnessKind.INCREASING_APPROACH),
    (SpectrumSpec([EigenvalueAtom(0, INFINITE), EigenvalueAtom(1, INFINITE)]),
     Reason.FAIL_TWO_INFINITE_MULTIPLICITIES, WitnessKind.TWO_INFINITE_MULTIPLICITIES),
    (SpectrumSpec([EigenvalueAtom(3, INFINITE)], [TailSequence(1, DEC, Harmonic(1))]),
     Reason.FAIL_LIMIT_NEQ_INF_MULT, WitnessKind.LIMIT_BELOW),
    (SpectrumSpec([EigenvalueAtom(1, INFINITE)], [TailSequence(2, DEC, Harmonic(1))]),
     Reason.FAIL_LIMIT_NEQ_INF_MULT, WitnessKind.LIMIT_ABOVE),
])
def test_failure_reasons_and_witness_kinds(spec, reason, kind):
    v = classify_positive(spec)
    assert not v.satisfied
    assert v.reason is reason and v.witness.kind is kind


def test_failure_priority_order():
    # increasing tail and two infinite atoms: (i) is reported first
    spec = SpectrumSpec([EigenvalueAtom(0, INFINITE), EigenvalueAtom(1, INFINITE)],
                        [TailSequence(2, INC, Harmonic(1))])
    assert classify_positive(spec).reason is Reason.FAIL_INCREASING_APPROACH


def test_no_witness_for_an_spec():
    with pytest.raises(NoWitness):
        build_witness(get_model("ramesh-counterexample").spec)


def test_verdict_invariants_enforced():
    with pytest.raises(ValueError):
        ANVerdict(True, Reason.FINITE_RANK_PLUS_SCALAR)
    with pytest.raises(ValueError):
        ANVerdict(False, Reason.FAIL_TWO_LIMIT_POINTS)


def test_verdict_json_shape():
    out = classify_positive(get_model("ramesh-counterexample").spec).to_json()
    assert set(out) == {"satisfied", "reason", "decomposition", "witness"}
    assert out["witness"] is None and out["decomposition"]["alpha"] == 1


# -- diagonal operators -------------------------------------------------------


def test_modulus_spectrum_examples():
    iso = get_model("isometry-phase").spec
    assert modulus_spectrum(iso) == SpectrumSpec([EigenvalueAtom(1, INFINITE)])
    fixed = DiagonalOperatorSpec([FixedComplex(2, "1/2", 1)])
    assert modulus_spectrum(fixed) == SpectrumSpec([EigenvalueAtom(2, 1)])
    tail = TailSequence(2, INC, Harmonic(1))
    assert modulus_spectrum(DiagonalOperatorSpec([PhasedTail(tail, "e^{i n}")])) == \
        SpectrumSpec(tails=[tail])


def test_classify_diagonal_examples():
    assert classify_diagonal(get_model("isometry-phase").spec).satisfied
    proj = DiagonalOperatorSpec([ConstantModulusFamily(0), ConstantModulusFamily(1)])
    assert classify_diagonal(proj).reason is Reason.FAIL_TWO_INFINITE_MULTIPLICITIES
    assert classify_diagonal(DiagonalOperatorSpec([FixedComplex(3, "1/3")])).satisfied


def test_diagonal_json_round_trip():
    d = DiagonalOperatorSpec([FixedComplex("1/2", "1/4", INFINITE),
                              PhasedTail(TailSequence(0, DEC, Harmonic(1)), "alternating"),
                              ConstantModulusFamily(1, "distinct")])
    assert DiagonalOperatorSpec.from_json(d.to_json()) == d


def test_diagonal_rejects_negative_modulus():
    with pytest.raises(SpecError):
        FixedComplex(-1)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False), st.lists(st.fractions(0, 2), min_size=1, max_size=4))
def test_phase_blindness(rnd, phases):
    spec = random_spec(rnd)
    entries = [FixedComplex(a.value, 0, a.multiplicity) for a in spec.atoms]
    entries += [PhasedTail(t) for t in spec.tails]
    rephased = [FixedComplex(e.modulus, phases[i % len(phases)], e.multiplicity)
                if isinstance(e, FixedComplex) else PhasedTail(e.modulus_tail, "shuffled")
                for i, e in enumerate(entries)]
    a = classify_diagonal(DiagonalOperatorSpec(entries))
    b = classify_diagonal(DiagonalOperatorSpec(rephased))
    assert a == b == classify_positive(spec)


# -- properties ---------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_an_implies_norming(rnd):
    spec = random_spec(rnd)
    if classify_positive(spec).satisfied:
        assert classify_norming(spec).satisfied


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False), st.fractions(Q(1, 10), 10))
def test_scaling_invariance(rnd, s):
    spec = random_spec(rnd)
    a, b = classify_positive(spec), classify_positive(spec.scaled(s))
    assert (a.satisfied, a.reason) == (b.satisfied, b.reason)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_satisfied_iff_round_trip(rnd):
    spec = random_spec(rnd) if rnd.random() < 0.5 else random_valid_spec(rnd)
    v = classify_positive(spec)
    if v.satisfied:
        back = reconstruct(v.decomposition)
        assert [x for x, _ in top_k_values(back, 200)] == [x for x, _ in top_k_values(spec, 200)]


@settings(max_examples=50, deadline=None)
@given(st.randoms(use_true_random=False))
def test_cone_property(rnd):
    d1 = decompose(random_valid_spec(rnd))
    d2 = decompose(random_valid_spec(rnd))
    assert classify_positive(reconstruct(add_decompositions(d1, d2))).satisfied


def test_norming_squared_spectrum_agrees():
    # squaring is exact on atoms and on tails converging to 0
    rng = random.Random(11)
    for _ in range(200):
        atoms = [EigenvalueAtom(random_rational(rng), rng.choice([1, INFINITE]))
                 for _ in range(rng.randint(0, 4))]
        tails = []
        if rng.random() < 0.5 or not atoms:
            tails.append(TailSequence(0, DEC, random_rule(rng)))
        spec = SpectrumSpec(atoms, tails)
        sq = spec.squared()
        assert classify_norming(spec).satisfied == classify_norming(sq).satisfied
        assert sup_norm(sq).norm == sup_norm(spec).norm ** 2
