"""
JSON document format for dual certificates.

Certificates are validated against CERTIFICATE_SCHEMA before they are
written, so a file on disk always carries the documented fields.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List

from jsonschema import Draft202012Validator, ValidationError

from .certify import CONDITIONS, DualCertificate

_NUMBER = {"type": "number"}
_CELL = {
    "anyOf": [
        {"type": "array", "items": {"type": "integer", "minimum": 0}},
        {"type": "null"},
    ]
}

CERTIFICATE_SCHEMA: Dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "DualCertificate",
    "type": "object",
    "required": [
        "m",
        "N",
        "objective",
        "revenue",
        "gap",
        "eps",
        "bound",
        "feasible",
        "residuals",
        "tie_break",
        "passed",
    ],
    "properties": {
        "m": {"type": "integer", "minimum": 1},
        "N": {"type": "integer", "minimum": 1},
        "g": {"type": "integer", "minimum": 1},
        "eps_prime": {"type": "number", "exclusiveMinimum": 0},
        "objective": _NUMBER,
        "revenue": _NUMBER,
        "revenue_method": {"enum": ["exact", "mc"]},
        "revenue_stderr": {"type": ["number", "null"]},
        "gap": _NUMBER,
        "eps": {"type": "number", "exclusiveMinimum": 0},
        "bound": {"type": "number", "exclusiveMinimum": 0},
        "feasible": {"type": "boolean"},
        "min_z_top": _NUMBER,
        "residuals": {
            "type": "object",
            "required": list(CONDITIONS),
            "properties": {name: {"type": "number", "minimum": 0} for name in CONDITIONS},
            "additionalProperties": False,
        },
        "matching": {"type": "object", "additionalProperties": {"type": "integer"}},
        "coloring": {
            "type": "object",
            "properties": {
                "color_counts": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "feasible": {"type": "boolean"},
            },
        },
        "tie_break": {"type": "string", "minLength": 1},
        "violations": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["condition", "residual", "bound"],
                "properties": {
                    "condition": {"type": "string"},
                    "residual": _NUMBER,
                    "bound": _NUMBER,
                    "cell": _CELL,
                },
            },
        },
        "passed": {"type": "boolean"},
    },
}


def certificate_errors(document: Any) -> List[str]:
    """All schema violations of ``document``, as ``path: message`` strings."""
    validator = Draft202012Validator(CERTIFICATE_SCHEMA)
    errors = []
    for error in sorted(validator.iter_errors(document), key=lambda e: [str(p) for p in e.path]):
        path = " -> ".join(str(p) for p in error.path) if error.path else "root"
        errors.append(f"{path}: {error.message}")
    return errors


def validate_certificate(document: Any) -> Dict[str, Any]:
    """
    Validate a certificate document.

    Raises:
        ValidationError: the document misses or mistypes a documented field
    """
    errors = certificate_errors(document)
    if errors:
        raise ValidationError("Invalid certificate: " + "; ".join(errors))
    return document


def certificate_to_json(certificate: DualCertificate) -> str:
    """Validated, key-sorted JSON text of ``certificate``."""
    document = validate_certificate(certificate.to_dict())
    return json.dumps(document, indent=2, sort_keys=True)
