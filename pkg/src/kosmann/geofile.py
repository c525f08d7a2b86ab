"""Line-oriented geometry files: chart header, metric table, named fields.

Example::

    # Minkowski (1,1) with a boost field and a constant spinor
    dim = 2
    signature = [1, 1]
    coords = [x0, x1]

    [metric]
    g[0,0] = "1"
    g[1,1] = "-1"

    [vector_field boost]
    c0 = "x1"
    c1 = "x0"

    [spinor_field psi]
    re0 = "1"

    [density_field vol]
    rank = [0, 0]
    weight = 1
    c[] = "1"

Only the upper triangle of the metric is required (entries mirror); any
omitted metric, vector, or spinor component defaults to "0".  Expression
values are double-quoted; numbers and bracketed lists are bare.  ``#``
starts a comment outside quotes.  All diagnostics carry line numbers.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import InputError
from .expr import Literal, Node, parse
from .geometry import (
    DensityFieldSpec,
    GeometrySpec,
    SpinorFieldSpec,
    VectorFieldSpec,
)
from .liealg import Signature

_SECTION_RE = re.compile(r"^\[(\w+)(?:\s+([A-Za-z_]\w*))?\]$")
_KEY_RE = re.compile(r"^([A-Za-z_]\w*)(?:\[([0-9,\s]*)\])?$")
_NAME_RE = re.compile(r"^[A-Za-z_]\w*$")


def load_geometry_file(path: str | Path) -> GeometrySpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read geometry file: {exc}") from exc
    return load_geometry(text)


def load_geometry(text: str) -> GeometrySpec:
    """Parse geometry-file text into a GeometrySpec."""
    header, sections = _split_sections(text)
    dim = _header_int(header, "dim")
    p, q = _header_int_list(header, "signature", expect=2)
    coords = _header_names(header, "coords")
    try:
        signature = Signature(p, q)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if len(coords) != dim:
        raise InputError(f"coords lists {len(coords)} names but dim = {dim}")
    extra = set(header) - {"dim", "signature", "coords"}
    if extra:
        raise InputError(f"unknown header keys: {sorted(extra)}")

    metric_entries: dict[tuple[int, int], tuple[Node, int]] = {}
    vector_fields: dict[str, VectorFieldSpec] = {}
    spinor_fields: dict[str, SpinorFieldSpec] = {}
    density_fields: dict[str, DensityFieldSpec] = {}
    saw_metric = False

    for kind, name, line_no, entries in sections:
        if kind == "metric":
            if saw_metric:
                raise InputError(f"line {line_no}: duplicate [metric] section")
            saw_metric = True
            _parse_metric(entries, metric_entries, dim, coords)
        elif kind == "vector_field":
            _require_name(kind, name, line_no)
            if name in vector_fields:
                raise InputError(f"line {line_no}: duplicate vector_field '{name}'")
            vector_fields[name] = _parse_vector(entries, dim, coords)
        elif kind == "spinor_field":
            _require_name(kind, name, line_no)
            if name in spinor_fields:
                raise InputError(f"line {line_no}: duplicate spinor_field '{name}'")
            n_spinor = 2 ** (dim // 2)
            spinor_fields[name] = _parse_spinor(entries, n_spinor, coords)
        elif kind == "density_field":
            _require_name(kind, name, line_no)
            if name in density_fields:
                raise InputError(f"line {line_no}: duplicate density_field '{name}'")
            density_fields[name] = _parse_density(entries, dim, coords)
        else:
            raise InputError(f"line {line_no}: unknown section kind '{kind}'")

    if not saw_metric:
        raise InputError("geometry file has no [metric] section")
    zero = Literal(value=0.0)
    metric = tuple(
        tuple(
            metric_entries.get((min(mu, nu), max(mu, nu)), (zero, 0))[0] for nu in range(dim)
        )
        for mu in range(dim)
    )
    return GeometrySpec(
        dim=dim,
        signature=signature,
        coord_names=tuple(coords),
        metric=metric,
        vector_fields=vector_fields,
        spinor_fields=spinor_fields,
        density_fields=density_fields,
    )


# ---------------------------------------------------------------------------
# Low-level line handling
# ---------------------------------------------------------------------------

Entry = tuple[str, tuple[int, ...] | None, str, int]  # key, indices, raw value, line_no


def _split_sections(text: str):
    """Return (header entries dict, [(kind, name, line_no, entries)])."""
    header: dict[str, tuple[str, int]] = {}
    sections: list[tuple[str, str | None, int, list[Entry]]] = []
    current: list[Entry] | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        section = _SECTION_RE.match(line)
        if section:
            current = []
            sections.append((section.group(1), section.group(2), line_no, current))
            continue
        if "=" not in line:
            raise InputError(f"line {line_no}: expected 'key = value' or a [section] header")
        key_part, value_part = line.split("=", 1)
        key_match = _KEY_RE.match(key_part.strip())
        if not key_match:
            raise InputError(f"line {line_no}: malformed key '{key_part.strip()}'")
        key = key_match.group(1)
        indices = None
        if key_match.group(2) is not None:
            index_text = key_match.group(2).strip()
            indices = tuple(int(s) for s in index_text.split(",")) if index_text else ()
        value = value_part.strip()
        if current is None:
            if indices is not None:
                raise InputError(f"line {line_no}: indexed key '{key}' outside any section")
            if key in header:
                raise InputError(f"line {line_no}: duplicate header key '{key}'")
            header[key] = (value, line_no)
        else:
            current.append((key, indices, value, line_no))
    return header, sections


def _strip_comment(line: str) -> str:
    in_quotes = False
    for i, ch in enumerate(line):
        if ch == '"':
            in_quotes = not in_quotes
        elif ch == "#" and not in_quotes:
            return line[:i]
    return line


def _header_int(header, key: str) -> int:
    value, line_no = _header_get(header, key)
    try:
        return int(value)
    except ValueError as exc:
        raise InputError(f"line {line_no}: {key} must be an integer, got '{value}'") from exc


def _header_int_list(header, key: str, expect: int) -> list[int]:
    value, line_no = _header_get(header, key)
    items = _bracketed_items(value, line_no, key)
    if len(items) != expect:
        raise InputError(f"line {line_no}: {key} must list {expect} integers")
    try:
        return [int(s) for s in items]
    except ValueError as exc:
        raise InputError(f"line {line_no}: {key} entries must be integers") from exc


def _header_names(header, key: str) -> list[str]:
    value, line_no = _header_get(header, key)
    items = _bracketed_items(value, line_no, key)
    seen = set()
    for item in items:
        if not _NAME_RE.match(item):
            raise InputError(f"line {line_no}: invalid coordinate name '{item}'")
        if item in seen:
            raise InputError(f"line {line_no}: duplicate coordinate name '{item}'")
        seen.add(item)
    return items


def _header_get(header, key: str) -> tuple[str, int]:
    if key not in header:
        raise InputError(f"geometry file is missing the '{key}' header entry")
    return header[key]


def _bracketed_items(value: str, line_no: int, key: str) -> list[str]:
    if not (value.startswith("[") and value.endswith("]")):
        raise InputError(f"line {line_no}: {key} must be a bracketed list")
    inner = value[1:-1].strip()
    return [s.strip() for s in inner.split(",")] if inner else []


def _quoted_expression(value: str, line_no: int, coords: list[str]) -> Node:
    if not (len(value) >= 2 and value.startswith('"') and value.endswith('"')):
        raise InputError(f"line {line_no}: expression values must be double-quoted")
    try:
        return parse(value[1:-1], coords)
    except InputError as exc:
        raise InputError(f"line {line_no}: {exc}") from exc


def _require_name(kind: str, name: str | None, line_no: int) -> None:
    if not name:
        raise InputError(f"line {line_no}: [{kind}] section needs a name")


# ---------------------------------------------------------------------------
# Section parsers
# ---------------------------------------------------------------------------


def _parse_metric(entries: list[Entry], out: dict, dim: int, coords: list[str]) -> None:
    for key, indices, value, line_no in entries:
        if key != "g" or indices is None or len(indices) != 2:
            raise InputError(f"line {line_no}: metric entries look like g[i,j] = \"expr\"")
        mu, nu = indices
        if not (0 <= mu < dim and 0 <= nu < dim):
            raise InputError(f"line {line_no}: metric index ({mu},{nu}) outside dimension {dim}")
        pair = (min(mu, nu), max(mu, nu))
        if pair in out:
            raise InputError(
                f"line {line_no}: metric entry g[{mu},{nu}] already given "
                f"(line {out[pair][1]}; the table is symmetric)"
            )
        out[pair] = (_quoted_expression(value, line_no, coords), line_no)


def _parse_vector(entries: list[Entry], dim: int, coords: list[str]) -> VectorFieldSpec:
    components: dict[int, Node] = {}
    for key, indices, value, line_no in entries:
        index = _component_index(key, indices, "c", line_no)
        if not 0 <= index < dim:
            raise InputError(f"line {line_no}: component c{index} outside dimension {dim}")
        if index in components:
            raise InputError(f"line {line_no}: duplicate component c{index}")
        components[index] = _quoted_expression(value, line_no, coords)
    zero = Literal(value=0.0)
    return VectorFieldSpec(tuple(components.get(i, zero) for i in range(dim)))


def _parse_spinor(entries: list[Entry], n_spinor: int, coords: list[str]) -> SpinorFieldSpec:
    parts: dict[tuple[str, int], Node] = {}
    for key, indices, value, line_no in entries:
        match = re.match(r"^(re|im)([0-9]+)$", key)
        if not match or indices is not None:
            raise InputError(f"line {line_no}: spinor entries look like re0/im0 = \"expr\"")
        part, index = match.group(1), int(match.group(2))
        if not 0 <= index < n_spinor:
            raise InputError(
                f"line {line_no}: spinor component {key} outside spinor dimension {n_spinor}"
            )
        if (part, index) in parts:
            raise InputError(f"line {line_no}: duplicate spinor component {key}")
        parts[(part, index)] = _quoted_expression(value, line_no, coords)
    zero = Literal(value=0.0)
    return SpinorFieldSpec(
        tuple(
            (parts.get(("re", i), zero), parts.get(("im", i), zero)) for i in range(n_spinor)
        )
    )


def _parse_density(entries: list[Entry], dim: int, coords: list[str]) -> DensityFieldSpec:
    rank: tuple[int, int] | None = None
    weight: float | None = None
    components: dict[tuple[int, ...], tuple[Node, int]] = {}
    for key, indices, value, line_no in entries:
        if key == "rank" and indices is None:
            if rank is not None:
                raise InputError(f"line {line_no}: duplicate rank entry")
            r, s = _header_int_list({"rank": (value, line_no)}, "rank", expect=2)
            if r < 0 or s < 0:
                raise InputError(f"line {line_no}: rank entries must be non-negative")
            rank = (r, s)
        elif key == "weight" and indices is None:
            if weight is not None:
                raise InputError(f"line {line_no}: duplicate weight entry")
            try:
                weight = float(value)
            except ValueError as exc:
                raise InputError(f"line {line_no}: weight must be a number") from exc
        elif key == "c" and indices is not None:
            if indices in components:
                raise InputError(f"line {line_no}: duplicate component c[{indices}]")
            components[indices] = (_quoted_expression(value, line_no, coords), line_no)
        else:
            raise InputError(
                f"line {line_no}: density entries are rank, weight, or c[indices] = \"expr\""
            )
    if rank is None:
        raise InputError("density_field section is missing its rank entry")
    if weight is None:
        raise InputError("density_field section is missing its weight entry")
    n_indices = rank[0] + rank[1]
    for indices, (_, line_no) in components.items():
        if len(indices) != n_indices or any(not 0 <= k < dim for k in indices):
            raise InputError(
                f"line {line_no}: component index {list(indices)} invalid for "
                f"rank {list(rank)} in dimension {dim}"
            )
    return DensityFieldSpec(
        rank=rank, weight=weight, components={k: v[0] for k, v in components.items()}
    )


def _component_index(key: str, indices: tuple[int, ...] | None, prefix: str,
                     line_no: int) -> int:
    match = re.match(rf"^{prefix}([0-9]+)$", key)
    if not match or indices is not None:
        raise InputError(f"line {line_no}: components look like {prefix}0 = \"expr\"")
    return int(match.group(1))
