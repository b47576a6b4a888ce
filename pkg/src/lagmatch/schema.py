"""The versioned JSON Schema for ``lagmatch`` input documents.

Input documents are JSON objects with a mandatory ``schema`` version tag
and one or more sections; each CLI subcommand reads the sections it needs
(``dim`` and ``gradings`` read ``fibration``/``spinc``/``query``,
``tqft-eval`` reads ``morse_cycle``, ``cz`` reads ``cz``).

Integers may be written as JSON numbers or as digit strings ("-123") so
that values beyond 53 bits survive JSON round trips; floating point
numbers are rejected everywhere except inside ``cz`` sample matrices.
That float rule is enforced by the CLI after validation, since JSON Schema
alone cannot distinguish 2 from 2.0.

To print the schema document:

    python -c "import json, lagmatch.schema as s; print(json.dumps(s.INPUT_SCHEMA, indent=2))"
"""

from __future__ import annotations

SCHEMA_VERSION = "lagmatch-input@1"

_INTLIKE = {
    "anyOf": [
        {"type": "integer"},
        {"type": "string", "pattern": "^-?[0-9]+$"},
    ]
}

_INT_ARRAY = {"type": "array", "items": _INTLIKE}

_INT_MATRIX = {"type": "array", "items": _INT_ARRAY}

_NUM_MATRIX = {
    "type": "array",
    "minItems": 1,
    "items": {"type": "array", "items": {"type": "number"}},
}

_MATRIX_PATH = {"type": "array", "minItems": 1, "items": _NUM_MATRIX}

INPUT_SCHEMA: dict = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "$id": SCHEMA_VERSION,
    "type": "object",
    "additionalProperties": False,
    "required": ["schema"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "fibration": {
            "type": "object",
            "additionalProperties": False,
            "required": ["regions", "h2"],
            "properties": {
                "regions": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["chi_base", "fibers"],
                        "properties": {
                            "chi_base": _INTLIKE,
                            "fibers": {
                                "type": "array",
                                "minItems": 1,
                                "maxItems": 2,
                                "items": {
                                    "type": "object",
                                    "additionalProperties": False,
                                    "required": ["genus"],
                                    "properties": {
                                        "genus": _INTLIKE,
                                        "class": _INT_ARRAY,
                                    },
                                },
                            },
                        },
                    },
                },
                "round_circles": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["orientable"],
                        "properties": {"orientable": {"type": "boolean"}},
                    },
                },
                "lefschetz_points": _INTLIKE,
                "signature": _INTLIKE,
                "h2": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["form", "canonical"],
                    "properties": {
                        "form": _INT_MATRIX,
                        "canonical": _INT_ARRAY,
                    },
                },
            },
        },
        "spinc": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "minProperties": 1,
                "maxProperties": 1,
                "properties": {
                    "c1": _INT_ARRAY,
                    "beta": _INT_ARRAY,
                },
            },
        },
        "morse_cycle": {
            "type": "object",
            "additionalProperties": False,
            "required": ["n0", "fibers", "moves"],
            "properties": {
                "n0": _INTLIKE,
                "fibers": {"type": "array", "minItems": 1, "items": _INTLIKE},
                "moves": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["kind"],
                        "properties": {
                            "kind": {"enum": ["down", "up", "twist"]},
                            "circle": _INT_ARRAY,
                            "matrix": _INT_MATRIX,
                        },
                    },
                },
            },
        },
        "cz": {
            "type": "object",
            "additionalProperties": False,
            "minProperties": 1,
            "maxProperties": 1,
            "properties": {
                "samples": _MATRIX_PATH,
                "paths": {"type": "array", "minItems": 1, "items": _MATRIX_PATH},
            },
        },
        "query": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "n_gamma": _INTLIKE,
                "n": _INTLIKE,
                "g": _INTLIKE,
            },
        },
    },
}
