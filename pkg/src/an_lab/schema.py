"""JSON schemas for the on-disk formats; structural validation only."""
from __future__ import annotations

import jsonschema

from an_lab.errors import SpecError

RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$"},
    ]
}

MULTIPLICITY = {"oneOf": [{"type": "integer", "minimum": 1}, {"const": "inf"}]}

TAIL = {
    "type": "object",
    "required": ["limit", "direction", "rule"],
    "additionalProperties": False,
    "properties": {
        "limit": RATIONAL,
        "direction": {"enum": ["decreasing", "increasing"]},
        "rule": {
            "type": "object",
            "required": ["type", "c"],
            "additionalProperties": False,
            "properties": {
                "type": {"enum": ["harmonic", "geometric"]},
                "c": RATIONAL,
                "p": {"oneOf": [{"type": "integer", "minimum": 1}, {"type": "null"}]},
                "r": {"oneOf": [RATIONAL, {"type": "null"}]},
            },
        },
        "term_multiplicity": {"type": "integer", "minimum": 1},
    },
}

SPECTRUM = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "atoms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["value", "multiplicity"],
                "additionalProperties": False,
                "properties": {"value": RATIONAL, "multiplicity": MULTIPLICITY},
            },
        },
        "tails": {"type": "array", "items": TAIL},
    },
}

DIAGONAL = {
    "type": "object",
    "required": ["entries"],
    "additionalProperties": False,
    "properties": {
        "entries": {
            "type": "array",
            "minItems": 1,
            "items": {
                "oneOf": [
                    {
                        "type": "object",
                        "required": ["type", "modulus", "phase", "multiplicity"],
                        "additionalProperties": False,
                        "properties": {
                            "type": {"const": "fixed"},
                            "modulus": RATIONAL,
                            "phase": RATIONAL,
                            "multiplicity": MULTIPLICITY,
                        },
                    },
                    {
                        "type": "object",
                        "required": ["type", "modulus_tail"],
                        "additionalProperties": False,
                        "properties": {
                            "type": {"const": "phased_tail"},
                            "modulus_tail": TAIL,
                            "phase_rule": {"type": "string"},
                        },
                    },
                    {
                        "type": "object",
                        "required": ["type", "modulus"],
                        "additionalProperties": False,
                        "properties": {
                            "type": {"const": "constant_modulus_family"},
                            "modulus": RATIONAL,
                            "phase_rule": {"type": "string"},
                        },
                    },
                ]
            },
        }
    },
}

PAIR = {"type": "array", "minItems": 2, "maxItems": 2,
        "items": [RATIONAL, {"type": "integer", "minimum": 1}]}

DECOMPOSITION = {
    "type": "object",
    "required": ["alpha", "alpha_infinite", "F", "K_atoms", "K_tail"],
    "additionalProperties": False,
    "properties": {
        "alpha": RATIONAL,
        "alpha_infinite": {"type": "boolean"},
        "alpha_finite_multiplicity": {"type": "integer", "minimum": 0},
        "F": {"type": "array", "items": PAIR},
        "K_atoms": {"type": "array", "items": PAIR},
        "K_tail": {"oneOf": [{"type": "null"}, TAIL, {"type": "array", "items": TAIL}]},
    },
}


def _validate(data, schema, what: str) -> None:
    validator = jsonschema.Draft7Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        lines = []
        for e in errors:
            where = "/".join(str(p) for p in e.absolute_path) or "<root>"
            lines.append(f"{where}: {e.message}")
        raise SpecError(f"invalid {what}:\n  " + "\n  ".join(lines))


def validate_spectrum(data) -> None:
    _validate(data, SPECTRUM, "spectrum")


def validate_diagonal(data) -> None:
    _validate(data, DIAGONAL, "diagonal operator")


def validate_decomposition(data) -> None:
    _validate(data, DECOMPOSITION, "decomposition")
