"""Deterministic JSON reports shared by the service and the CLI.

Every numeric leaf is rounded to 12 decimal places before serialization (so
re-runs are byte-identical), complex numbers become {"re":…, "im":…} objects,
and arrays are emitted row-major.  ``render_report`` fixes the key order and
indentation, making golden-file comparisons meaningful.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

STATUS_OK = "ok"
STATUS_INPUT_ERROR = "input_error"
STATUS_PRECONDITION_ERROR = "precondition_error"
STATUS_VERIFICATION_FAILURE = "verification_failure"

_EXIT_FOR_STATUS = {
    STATUS_OK: 0,
    STATUS_INPUT_ERROR: 2,
    STATUS_PRECONDITION_ERROR: 3,
    STATUS_VERIFICATION_FAILURE: 4,
}


def exit_code_for_status(status: str) -> int:
    return _EXIT_FOR_STATUS[status]


def canonical(value: Any) -> Any:
    """Recursively convert to JSON-safe values with 1e-12-granular floats."""
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    if isinstance(value, np.ndarray):
        return canonical(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": _round(value.real), "im": _round(value.imag)}
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _round(float(value))
    return value


def _round(x: float) -> float:
    rounded = round(float(x), 12)
    return 0.0 if rounded == 0.0 else rounded  # normalize -0.0


def build_report(command: str, status: str, inputs: dict, results: dict,
                 error: str | None = None) -> dict:
    return {
        "command": command,
        "status": status,
        "error": error,
        "inputs": canonical(inputs),
        "results": canonical(results),
    }


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
