"""Tests for canonical JSON reports and the status/exit-code mapping."""

import json

import numpy as np
import pytest

from kosmann.report import (
    build_report,
    canonical,
    exit_code_for_status,
    render_report,
)


def test_exit_codes():
    assert exit_code_for_status("ok") == 0
    assert exit_code_for_status("input_error") == 2
    assert exit_code_for_status("precondition_error") == 3
    assert exit_code_for_status("verification_failure") == 4
    with pytest.raises(KeyError):
        exit_code_for_status("bogus")


def test_floats_round_to_twelve_places():
    assert canonical(0.1234567890123456) == 0.123456789012
    assert canonical(1.0) == 1.0
    assert canonical(1e-13) == 0.0


def test_negative_zero_normalizes():
    value = canonical(-0.0)
    assert value == 0.0
    assert json.dumps(value) == "0.0"
    assert json.dumps(canonical(-1e-15)) == "0.0"


def test_complex_becomes_re_im_object():
    assert canonical(1.5 - 2.0j) == {"re": 1.5, "im": -2.0}
    assert canonical(np.complex128(3.0)) == {"re": 3.0, "im": 0.0}


def test_numpy_values_become_plain_python():
    out = canonical(
        {
            "arr": np.array([[1.0, -0.0], [2.5, 3.0]]),
            "int": np.int64(7),
            "float": np.float64(0.5),
            "bool": np.bool_(True),
        }
    )
    assert out == {"arr": [[1.0, 0.0], [2.5, 3.0]], "int": 7, "float": 0.5, "bool": True}
    assert isinstance(out["bool"], bool)
    assert isinstance(out["int"], int)


def test_complex_arrays():
    out = canonical(np.array([1.0 + 1.0j, -0.0 + 0.0j]))
    assert out == [{"re": 1.0, "im": 1.0}, {"re": 0.0, "im": 0.0}]


def test_tuples_and_nested_containers():
    assert canonical((1, (2.0, [3]))) == [1, [2.0, [3]]]
    assert canonical({"k": {"n": (0.5,)}}) == {"k": {"n": [0.5]}}


def test_build_report_shape():
    report = build_report("lie", "ok", {"a": np.float64(1.0)}, {"v": [1.0]})
    assert report == {
        "command": "lie",
        "status": "ok",
        "error": None,
        "inputs": {"a": 1.0},
        "results": {"v": [1.0]},
    }


def test_render_report_is_sorted_and_newline_terminated():
    report = build_report("x", "ok", {"b": 1, "a": 2}, {})
    text = render_report(report)
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == report
    assert render_report(report) == text
