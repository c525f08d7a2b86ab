"""Tests for the line-oriented geometry file format."""

import numpy as np
import pytest

from kosmann.errors import InputError
from kosmann.expr import eval_value
from kosmann.geofile import load_geometry, load_geometry_file
from kosmann.geometry import metric_at, vector_field_at
from kosmann.liederiv import density_value_at, spinor_value_at

POLAR_TEXT = """\
# a polar chart with one field of each kind
dim = 2
signature = [2, 0]
coords = [x0, x1]

[metric]
g[0,0] = "1"
g[0,1] = "0"
g[1,1] = "x0^2"

[vector_field rot]
c0 = "0"
c1 = "1"

[vector_field radial]
c0 = "x0"   # comments after values are fine
c1 = "0"

[spinor_field psi]
re0 = "1 + x1"
im0 = "0.5*x0"
re1 = "x0*x1"

[density_field w2]
rank = [0, 0]
weight = 2
c[] = "x0^2 + 1"
"""


def test_full_file_round_trip():
    spec = load_geometry(POLAR_TEXT)
    assert spec.dim == 2
    assert (spec.signature.p, spec.signature.q) == (2, 0)
    assert spec.coord_names == ("x0", "x1")
    assert set(spec.vector_fields) == {"rot", "radial"}
    assert set(spec.spinor_fields) == {"psi"}
    assert set(spec.density_fields) == {"w2"}

    point = np.array([1.5, 0.7])
    g = metric_at(spec, point).g
    assert np.abs(g - np.diag([1.0, 1.5**2])).max() < 1e-15
    assert np.abs(vector_field_at(spec, spec.vector_fields["radial"], point)[0]
                  - [1.5, 0.0]).max() < 1e-15
    psi = spinor_value_at(spec, spec.spinor_fields["psi"], point)
    assert np.abs(psi - [1.7 + 0.75j, 1.05]).max() < 1e-15
    w2 = spec.density_fields["w2"]
    assert w2.rank == (0, 0)
    assert w2.weight == 2.0
    assert abs(density_value_at(spec, w2, point) - 3.25) < 1e-15


def test_metric_upper_triangle_mirrors():
    text = """\
dim = 2
signature = [2, 0]
coords = [u, v]
[metric]
g[0,0] = "1 + v^2"
g[0,1] = "u*v"
g[1,1] = "2 + u^2"
"""
    spec = load_geometry(text)
    g = metric_at(spec, np.array([0.3, 0.8])).g
    assert abs(g[0, 1] - g[1, 0]) == 0.0
    assert abs(g[1, 0] - 0.24) < 1e-15


def test_lower_triangle_entry_also_accepted():
    text = """\
dim = 2
signature = [2, 0]
coords = [u, v]
[metric]
g[0,0] = "1"
g[1,0] = "u*v"
g[1,1] = "2"
"""
    g = metric_at(load_geometry(text), np.array([0.5, 0.4])).g
    assert abs(g[0, 1] - 0.2) < 1e-15


def test_missing_components_default_to_zero():
    text = """\
dim = 2
signature = [1, 1]
coords = [x0, x1]
[metric]
g[0,0] = "1"
g[1,1] = "-1"
[vector_field t]
c1 = "1"
[spinor_field psi]
im1 = "x0"
"""
    spec = load_geometry(text)
    point = np.array([0.25, 0.5])
    value, _ = vector_field_at(spec, spec.vector_fields["t"], point)
    assert np.abs(value - [0.0, 1.0]).max() == 0.0
    psi = spinor_value_at(spec, spec.spinor_fields["psi"], point)
    assert np.abs(psi - [0.0, 0.25j]).max() == 0.0


def test_comments_and_blank_lines_ignored():
    text = """\

# leading comment
dim = 2   # trailing comment
signature = [2, 0]
coords = [x0, x1]

[metric]   # section comment
g[0,0] = "1"
g[1,1] = "1"
"""
    spec = load_geometry(text)
    assert spec.dim == 2


def test_file_loader(tmp_path):
    path = tmp_path / "polar.geo"
    path.write_text(POLAR_TEXT)
    spec = load_geometry_file(path)
    assert spec.coord_names == ("x0", "x1")


def test_file_loader_missing_file(tmp_path):
    with pytest.raises(InputError, match="cannot read geometry file"):
        load_geometry_file(tmp_path / "absent.geo")


# ---------------------------------------------------------------------------
# Diagnostics
# ---------------------------------------------------------------------------

HEADER = 'dim = 2\nsignature = [2, 0]\ncoords = [x0, x1]\n'
METRIC = '[metric]\ng[0,0] = "1"\ng[1,1] = "1"\n'


def test_duplicate_metric_pair_reports_both_lines():
    text = HEADER + '[metric]\ng[0,1] = "x0"\ng[1,1] = "1"\ng[1,0] = "x1"\ng[0,0] = "1"\n'
    with pytest.raises(InputError, match=r"line 7: .*g\[1,0\].*line 5"):
        load_geometry(text)


def test_unquoted_expression_rejected():
    text = HEADER + '[metric]\ng[0,0] = 1\n'
    with pytest.raises(InputError, match="line 5: .*double-quoted"):
        load_geometry(text)


def test_expression_errors_carry_line_numbers():
    text = HEADER + '[metric]\ng[0,0] = "1 +"\ng[1,1] = "1"\n'
    with pytest.raises(InputError, match="line 5"):
        load_geometry(text)


def test_unknown_symbol_in_expression():
    text = HEADER + '[metric]\ng[0,0] = "y"\ng[1,1] = "1"\n'
    with pytest.raises(InputError, match="line 5"):
        load_geometry(text)


def test_unknown_section_kind():
    text = HEADER + METRIC + "[covector_field w]\n"
    with pytest.raises(InputError, match="line 7: unknown section kind"):
        load_geometry(text)


def test_missing_metric_section():
    with pytest.raises(InputError, match="no \\[metric\\] section"):
        load_geometry(HEADER)


def test_missing_header_entry():
    with pytest.raises(InputError, match="missing the 'coords' header"):
        load_geometry('dim = 2\nsignature = [2, 0]\n' + METRIC)


def test_unknown_header_key():
    with pytest.raises(InputError, match="unknown header keys"):
        load_geometry(HEADER + "extra = 3\n" + METRIC)


def test_coords_count_must_match_dim():
    text = 'dim = 2\nsignature = [2, 0]\ncoords = [x0, x1, x2]\n' + METRIC
    with pytest.raises(InputError, match="coords lists 3 names but dim = 2"):
        load_geometry(text)


def test_signature_must_match_dim():
    text = 'dim = 2\nsignature = [1, 2]\ncoords = [x0, x1]\n' + METRIC
    with pytest.raises(InputError):
        load_geometry(text)


def test_line_without_equals_sign():
    with pytest.raises(InputError, match="line 4: expected 'key = value'"):
        load_geometry(HEADER + "metric\n")


def test_duplicate_header_key():
    with pytest.raises(InputError, match="line 4: duplicate header key 'dim'"):
        load_geometry(HEADER + "dim = 2\n" + METRIC)


def test_indexed_key_outside_section():
    with pytest.raises(InputError, match="line 4: .*outside any section"):
        load_geometry(HEADER + 'g[0,0] = "1"\n')


def test_duplicate_field_name():
    text = HEADER + METRIC + '[vector_field v]\nc0 = "1"\n[vector_field v]\nc0 = "2"\n'
    with pytest.raises(InputError, match="line 9: duplicate vector_field 'v'"):
        load_geometry(text)


def test_section_needs_name():
    text = HEADER + METRIC + "[vector_field]\n"
    with pytest.raises(InputError, match=r"line 7: \[vector_field\] section needs a name"):
        load_geometry(text)


def test_vector_component_out_of_range():
    text = HEADER + METRIC + '[vector_field v]\nc2 = "1"\n'
    with pytest.raises(InputError, match="line 8: component c2 outside dimension 2"):
        load_geometry(text)


def test_spinor_component_out_of_range():
    text = HEADER + METRIC + '[spinor_field s]\nre2 = "1"\n'
    with pytest.raises(InputError, match="line 8: .*outside spinor dimension 2"):
        load_geometry(text)


def test_spinor_entry_shape():
    text = HEADER + METRIC + '[spinor_field s]\nc0 = "1"\n'
    with pytest.raises(InputError, match="line 8: spinor entries look like"):
        load_geometry(text)


def test_density_requires_rank_and_weight():
    text = HEADER + METRIC + '[density_field d]\nweight = 1\nc[] = "1"\n'
    with pytest.raises(InputError, match="missing its rank"):
        load_geometry(text)
    text = HEADER + METRIC + '[density_field d]\nrank = [0, 0]\nc[] = "1"\n'
    with pytest.raises(InputError, match="missing its weight"):
        load_geometry(text)


def test_density_component_index_length():
    text = HEADER + METRIC + '[density_field d]\nrank = [0, 1]\nweight = 0\nc[0,1] = "1"\n'
    with pytest.raises(InputError, match="line 10: component index \\[0, 1\\] invalid"):
        load_geometry(text)


def test_density_entries_parse():
    text = HEADER + METRIC + (
        '[density_field d]\nrank = [1, 1]\nweight = -0.5\n'
        'c[0,1] = "x0*x1"\nc[1,0] = "2"\n'
    )
    spec = load_geometry(text)
    d = spec.density_fields["d"]
    assert d.rank == (1, 1)
    assert d.weight == -0.5
    assert eval_value(d.components[(0, 1)], np.array([2.0, 3.0])) == 6.0
