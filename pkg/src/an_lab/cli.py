"""``an-lab`` command line.

Exit codes: 0 satisfied, 3 not satisfied, 4 no witness applies, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from an_lab.classifier import (
    DiagonalOperatorSpec,
    classify_diagonal,
    classify_norming,
    classify_positive,
    modulus_spectrum,
)
from an_lab.decomposer import Decomposition, decompose, reconstruct
from an_lab.errors import AnLabError, ConditionViolation, NoConvergence, SpecError
from an_lab.models import MODELS, get_model
from an_lab.numeric.linalg import SubspaceBasis, as_matrix, restricted_norm
from an_lab.numeric.matrix_io import read_matrix
from an_lab.numeric.suites import (
    DEFAULT_SEED,
    absval_suite,
    negcount_suite,
    norming_suite,
    polar_suite,
    random_complex_matrix,
    random_hermitian,
    random_psd,
)
from an_lab.numeric.truncation import reports_to_csv, truncation_study
from an_lab.spectrum import SpectrumSpec, top_k_values
from an_lab.witness import basis_rows_to_csv, emit_basis_vectors

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_NOT_SATISFIED = 3
EXIT_NO_WITNESS = 4

DEFAULT_PRECISION = 1e-10
VERIFY_DEPTH = 1000


class InputError(Exception):
    pass


def reporting_tolerance() -> float:
    raw = os.environ.get("AN_LAB_PRECISION")
    if raw is None or raw == "":
        return DEFAULT_PRECISION
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"AN_LAB_PRECISION must be a number, got {raw!r}") from None
    if not tol > 0:
        raise InputError("AN_LAB_PRECISION must be positive")
    return tol


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None


def load_operator(path):
    """Spectrum or diagonal operator, told apart by the ``entries`` key."""
    data = _read_json(path)
    if isinstance(data, dict) and "entries" in data:
        return DiagonalOperatorSpec.from_json(data)
    return SpectrumSpec.from_json(data)


def load_spectrum(path) -> SpectrumSpec:
    op = load_operator(path)
    return modulus_spectrum(op) if isinstance(op, DiagonalOperatorSpec) else op


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise InputError(f"--truncate expects comma-separated integers, got {text!r}") from None
    if not sizes:
        raise InputError("--truncate needs at least one size")
    return sizes


# -- subcommands --------------------------------------------------------------


def cmd_classify(args) -> int:
    op = load_operator(args.spec)
    if args.norming:
        spec = modulus_spectrum(op) if isinstance(op, DiagonalOperatorSpec) else op
        verdict = classify_norming(spec)
        if args.json:
            sys.stdout.write(_dump(verdict.to_json()))
        else:
            payload = verdict.to_json()
            sys.stdout.write(f"norming: {'yes' if verdict.satisfied else 'no'}\n")
            if verdict.satisfied:
                sys.stdout.write(f"attaining_value: {payload['attaining_value']}\n")
        return EXIT_OK if verdict.satisfied else EXIT_NOT_SATISFIED

    if isinstance(op, DiagonalOperatorSpec):
        verdict = classify_diagonal(op)
    else:
        verdict = classify_positive(op)
    if args.json:
        sys.stdout.write(_dump(verdict.to_json()))
    else:
        sys.stdout.write(f"absolutely_norming: {'yes' if verdict.satisfied else 'no'}\n")
        sys.stdout.write(f"reason: {verdict.reason.value}\n")
        if verdict.satisfied:
            d = verdict.decomposition.to_json()
            sys.stdout.write(f"alpha: {d['alpha']}\n")
            sys.stdout.write(f"F: {json.dumps(d['F'])}\n")
        else:
            sys.stdout.write(f"witness: {verdict.witness.kind.value}\n")
    return EXIT_OK if verdict.satisfied else EXIT_NOT_SATISFIED


def _same_spectrum(a: SpectrumSpec, b: SpectrumSpec) -> bool:
    if a.canonical() != b.canonical():
        return False
    va = [v for v, _ in top_k_values(a, VERIFY_DEPTH)]
    vb = [v for v, _ in top_k_values(b, VERIFY_DEPTH)]
    return va == vb


def cmd_decompose(args) -> int:
    spec = load_spectrum(args.spec)
    try:
        d = decompose(spec)
    except ConditionViolation as exc:
        sys.stderr.write(f"not absolutely norming: {exc}\n")
        return EXIT_NOT_SATISFIED
    text = _dump(d.to_json())
    _write(args.out, text)
    if args.verify:
        source = _read_json(args.out) if args.out and args.out != "-" else json.loads(text)
        again = Decomposition.from_json(source)
        ok = again == d and _same_spectrum(reconstruct(again), spec)
        sys.stderr.write(f"round-trip: {'ok' if ok else 'MISMATCH'}\n")
        if not ok:
            return EXIT_NOT_SATISFIED
    return EXIT_OK


def cmd_witness(args) -> int:
    spec = load_spectrum(args.spec)
    verdict = classify_positive(spec)
    if verdict.satisfied:
        sys.stderr.write("absolutely norming: no witness applies\n")
        return EXIT_NO_WITNESS
    plan = verdict.witness
    if args.emit_basis is None:
        _write(args.out, _dump(plan.to_json()))
        return EXIT_NOT_SATISFIED
    if args.emit_basis < 1:
        raise InputError("--emit-basis must be >= 1")
    csv_text = basis_rows_to_csv(emit_basis_vectors(plan, args.emit_basis))
    if args.out in (None, "-"):
        sys.stdout.write(csv_text)
    else:
        # plan on stdout, rows in the file
        sys.stdout.write(_dump(plan.to_json()))
        _write(args.out, csv_text)
    return EXIT_NOT_SATISFIED


def cmd_verify(args) -> int:
    spec = load_spectrum(args.spec)
    tol = reporting_tolerance()
    sizes = _parse_sizes(args.truncate)
    source = spec
    if args.witness:
        verdict = classify_positive(spec)
        if verdict.satisfied:
            sys.stderr.write("absolutely norming: no witness applies\n")
            return EXIT_NO_WITNESS
        source = verdict.witness
    try:
        reports = truncation_study(source, sizes, backend=args.backend)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    text = reports_to_csv(reports)
    sys.stdout.write(text)
    if args.report:
        _write(args.report, text)
    gaps = [r.gap for r in reports]
    monotone = all(b <= a + tol for a, b in zip(gaps, gaps[1:]))
    attained = all(abs(g) <= tol for g in gaps)
    sys.stderr.write(f"gaps nonincreasing: {'yes' if monotone else 'no'}; "
                     f"norm attained at every truncation: {'yes' if attained else 'no'}\n")
    return EXIT_OK if attained else EXIT_NOT_SATISFIED


def _load_matrix(path):
    try:
        return read_matrix(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def cmd_matrix_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    tol_line = f"seed {args.seed}\n"
    if args.size < 1:
        raise InputError("--size must be >= 1")

    if args.suite == "negcount":
        if args.matrix:
            f = _load_matrix(args.matrix)
        else:
            f = random_hermitian(rng, args.size, min(3, args.size))
        k = _load_matrix(args.psd) if args.psd else (
            np.zeros_like(as_matrix(f)) if args.matrix else random_psd(rng, args.size, args.size))
        result = negcount_suite(k, f, backend=args.backend)
    else:
        t = _load_matrix(args.matrix) if args.matrix else random_complex_matrix(rng, args.size)
        if args.subspace:
            basis = SubspaceBasis(_load_matrix(args.subspace))
            rn = restricted_norm(t, basis, backend=args.backend)
            tol_line += f"restricted_norm {rn.norm:.12e}\n"
            t = as_matrix(t) @ basis.matrix
        if args.suite == "polar":
            result = polar_suite(t, backend=args.backend)
        elif args.suite == "absval":
            result = absval_suite(t, rng, backend=args.backend)
            prec = reporting_tolerance()
            for c in result.checks:
                c.tolerance, c.passed = prec, c.value <= prec
        else:
            result = norming_suite(t, backend=args.backend)

    sys.stdout.write(tol_line)
    for line in result.lines():
        sys.stdout.write(line + "\n")
    return EXIT_OK if result.passed else EXIT_NOT_SATISFIED


def cmd_models(args) -> int:
    if args.action == "list":
        for name in MODELS:
            sys.stdout.write(name + "\n")
        return EXIT_OK
    if not args.name:
        raise InputError(f"models {args.action} needs a model name")
    try:
        entry = get_model(args.name)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    if args.action == "show":
        sys.stdout.write(_dump({"name": entry.name, "provenance": entry.provenance,
                                "spec": entry.spec.to_json()}))
        return EXIT_OK
    if not args.file:
        raise InputError("models export needs an output file")
    _write(args.file, _dump(entry.spec.to_json()))
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="an-lab", description=__doc__.splitlines()[0])
    p.add_argument("--backend", choices=["numba", "numpy"], default=None,
                   help="eigensolver kernel (default: numba unless AN_LAB_DISABLE_NUMBA is set)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="AN (or norming) verdict for a spectrum")
    c.add_argument("spec")
    c.add_argument("--norming", action="store_true", help="decide norming instead of AN")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    d = sub.add_parser("decompose", help="alpha*I + K + F decomposition")
    d.add_argument("spec")
    d.add_argument("--out", default=None)
    d.add_argument("--verify", action="store_true", help="re-read and compare the round trip")
    d.set_defaults(func=cmd_decompose)

    w = sub.add_parser("witness", help="witness plan for a non-AN spectrum")
    w.add_argument("spec")
    w.add_argument("--emit-basis", type=int, default=None, metavar="N")
    w.add_argument("--out", default=None)
    w.set_defaults(func=cmd_witness)

    v = sub.add_parser("verify", help="finite truncation study")
    v.add_argument("spec")
    v.add_argument("--truncate", required=True, metavar="N1,N2,...")
    v.add_argument("--report", default=None)
    v.add_argument("--witness", action="store_true", help="study the witness plan instead")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("matrix-check", help="finite-dimensional property suites")
    m.add_argument("--matrix", default=None, help="matrix CSV (random if omitted)")
    m.add_argument("--subspace", default=None, help="orthonormal basis CSV (columns)")
    m.add_argument("--suite", required=True, choices=["polar", "absval", "norming", "negcount"])
    m.add_argument("--psd", default=None, help="positive part K for negcount")
    m.add_argument("--seed", type=int, default=DEFAULT_SEED)
    m.add_argument("--size", type=int, default=8)
    m.set_defaults(func=cmd_matrix_check)

    r = sub.add_parser("models", help="named models")
    r.add_argument("action", choices=["list", "show", "export"])
    r.add_argument("name", nargs="?")
    r.add_argument("file", nargs="?")
    r.set_defaults(func=cmd_models)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except NoConvergence as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INTERNAL
    except (InputError, SpecError, AnLabError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
