"""JSON schemas for every document the CLI can emit, plus the CSV contract.

``validate_document(kind, doc)`` raises ``jsonschema.ValidationError`` on
mismatch; tests round-trip each CLI JSON output through it.
"""

from __future__ import annotations

import jsonschema

CSV_HEADER = [
    "family",
    "N",
    "param",
    "lower",
    "upper",
    "estimate",
    "method",
    "tolerance",
    "valid_lower",
    "valid_upper",
]

_CONVERGENT = {
    "type": "object",
    "properties": {
        "index": {"type": "integer"},
        "p": {"type": "integer"},
        "q": {"type": "integer"},
    },
    "required": ["index", "p", "q"],
    "additionalProperties": False,
}

_ESTIMATE = {
    "type": "object",
    "properties": {
        "method": {"enum": ["COLLOCATION", "WORD_ENUMERATION"]},
        "value": {"type": "number"},
        "tolerance": {"type": "number"},
        "diagnostics": {"type": "object"},
    },
    "required": ["method", "value", "tolerance", "diagnostics"],
    "additionalProperties": False,
}

_CERTIFICATE = {
    "type": "object",
    "properties": {
        "condition_id": {
            "enum": [
                "MASS_DIST_4_1",
                "COVERING_4_2",
                "SUFFICIENCY_4_005",
                "TELESCOPE_4_6",
                "GOOD_CHILDREN",
                "GROWTH_LEMMA",
            ]
        },
        "params": {"type": "object"},
        "status": {"enum": ["PASS", "FAIL"]},
        "witness_digits": {
            "anyOf": [{"type": "null"}, {"type": "array", "items": {"type": "integer"}}]
        },
        "words_checked": {"type": "integer"},
        "precision_bits": {"type": "integer"},
    },
    "required": [
        "condition_id",
        "params",
        "status",
        "witness_digits",
        "words_checked",
        "precision_bits",
    ],
    "additionalProperties": False,
}

SCHEMAS: dict[str, dict] = {
    "digits": {
        "type": "object",
        "properties": {
            "N": {"type": "integer"},
            "x": {"type": "string"},
            "digits": {"type": "array", "items": {"type": "integer"}},
            "terminated": {"type": "boolean"},
            "value": {"type": "string"},
            "convergents": {"type": "array", "items": _CONVERGENT},
            "determinant_ok": {"type": "boolean"},
        },
        "required": [
            "N",
            "x",
            "digits",
            "terminated",
            "value",
            "convergents",
            "determinant_ok",
        ],
        "additionalProperties": False,
    },
    "bounds": {
        "type": "object",
        "properties": {
            "family": {"enum": ["jarnik", "good"]},
            "N": {"type": "integer"},
            "M": {"type": "integer"},
            "alpha": {"type": "number"},
            "raw_lower": {"type": "number"},
            "raw_upper": {"type": "number"},
            "lower": {"type": "number"},
            "upper": {"type": "number"},
            "lower_valid": {"type": "boolean"},
            "upper_valid": {"type": "boolean"},
            "implicit_s": {"anyOf": [{"type": "null"}, {"type": "number"}]},
        },
        "required": [
            "family",
            "N",
            "raw_lower",
            "raw_upper",
            "lower",
            "upper",
            "lower_valid",
            "upper_valid",
        ],
        "additionalProperties": False,
    },
    "estimate": {
        "type": "object",
        "properties": {
            "N": {"type": "integer"},
            "min_digit": {"type": "integer"},
            "max_digit": {"type": "integer"},
            "estimates": {"type": "array", "items": _ESTIMATE},
            "sandwich": {
                "anyOf": [
                    {"type": "null"},
                    {
                        "type": "object",
                        "properties": {
                            "lower": {"type": "number"},
                            "upper": {"type": "number"},
                            "lower_valid": {"type": "boolean"},
                            "upper_valid": {"type": "boolean"},
                            "lower_applicable": {"type": "boolean"},
                            "checks": {"type": "array", "items": {"type": "boolean"}},
                            "passed": {"type": "boolean"},
                        },
                        "required": ["lower", "upper", "passed", "checks"],
                        "additionalProperties": True,
                    },
                ]
            },
        },
        "required": ["N", "min_digit", "max_digit", "estimates", "sandwich"],
        "additionalProperties": False,
    },
    "certificate": _CERTIFICATE,
    "verify": {
        "type": "object",
        "properties": {
            "suite": {"type": "string"},
            "certificates": {"type": "array", "items": _CERTIFICATE},
            "all_passed": {"type": "boolean"},
        },
        "required": ["suite", "certificates", "all_passed"],
        "additionalProperties": False,
    },
}


def validate_document(kind: str, doc: dict) -> None:
    """Validate a CLI JSON document against its schema (raises on mismatch)."""
    jsonschema.validate(doc, SCHEMAS[kind])


def validate_csv_header(fields: list[str]) -> None:
    """Reject reordered, renamed, or missing sweep CSV columns."""
    if fields != CSV_HEADER:
        raise ValueError(
            f"sweep CSV header mismatch: expected {CSV_HEADER}, got {fields}"
        )
