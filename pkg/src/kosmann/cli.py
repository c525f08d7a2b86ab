"""Command-line client for the service: decompose, lie, verify, jet, serve.

By default each command drives the service app in-process (no socket); pass
``--server URL`` to talk to a running instance instead.  Reports are printed
as canonical JSON; the process exit code follows the report status: 0 ok,
2 input/parse error, 3 violated mathematical precondition, 4 verification
failure.
"""

from __future__ import annotations

import asyncio
import json
import sys
from pathlib import Path

import click
import httpx

from .report import STATUS_INPUT_ERROR, build_report, exit_code_for_status, render_report
from .service import app as service_app

_FLAVOURS = (
    "natural",
    "density",
    "spinor-kosmann",
    "spinor-covariant",
    "spinor-gauge",
    "lichnerowicz",
    "reductive-metric",
    "flow-oracle",
)

_JET_OPS = ("mul", "inv", "act-v", "act-vert", "act-tau")


def _post(path: str, payload: dict, server: str | None) -> tuple[int, dict]:
    if server:
        response = httpx.post(server.rstrip("/") + path, json=payload, timeout=300.0)
        return response.status_code, response.json()

    async def call():
        transport = httpx.ASGITransport(app=service_app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://kosmann.local", timeout=300.0
        ) as client:
            return await client.post(path, json=payload)

    response = asyncio.run(call())
    return response.status_code, response.json()


def _run(command: str, path: str, payload: dict, server: str | None) -> None:
    code, body = _post(path, payload, server)
    if code != 200:
        report = build_report(
            command,
            STATUS_INPUT_ERROR,
            payload,
            {},
            error=f"service returned HTTP {code}: {json.dumps(body, sort_keys=True)}",
        )
        click.echo(render_report(report), nl=False)
        sys.exit(2)
    click.echo(render_report(body), nl=False)
    sys.exit(exit_code_for_status(body["status"]))


# ---------------------------------------------------------------------------
# Argument parsing helpers
# ---------------------------------------------------------------------------


def _parse_reals(text: str, what: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise click.UsageError(f"malformed {what} '{text}': comma-separated reals") from exc


def _parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise click.UsageError(f"malformed {what} '{text}': comma-separated integers") from exc


def _parse_matrix(text: str, what: str) -> list[list[float]]:
    rows = [_parse_reals(row, what) for row in text.split(";")]
    if any(len(row) != len(rows[0]) for row in rows):
        raise click.UsageError(f"malformed {what} '{text}': ragged rows")
    return rows


def _parse_theta(text: str, what: str) -> list[list[list[float]]]:
    return [_parse_matrix(part, what) for part in text.split("|")]


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise click.UsageError(f"cannot read '{path}': {exc}") from exc


def _server_option(f):
    return click.option("--server", default=None, metavar="URL",
                        help="POST to a running service instead of in-process.")(f)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@click.group()
def main() -> None:
    """Lie derivatives of spinors, tensors, and densities on explicit charts."""


@main.command()
@click.option("--matrix", required=True, metavar="R;R;…",
              help='Square matrix, rows separated by ";", entries by ",".')
@click.option("--signature", "signature_text", required=True, metavar="P,Q",
              help="Metric signature as two comma-separated integers.")
@_server_option
def decompose(matrix: str, signature_text: str, server: str | None) -> None:
    """Split a matrix into eta-antisymmetric + symmetric-traceless + trace parts."""
    payload = {
        "matrix": _parse_matrix(matrix, "matrix"),
        "signature": _parse_ints(signature_text, "signature"),
    }
    _run("decompose", "/decompose", payload, server)


@main.command()
@click.option("--file", "file_path", required=True, type=click.Path(), metavar="GEOMETRY",
              help="Geometry file with the chart and named fields.")
@click.option("--flavour", required=True, type=click.Choice(_FLAVOURS))
@click.option("--field", default=None, help="Vector field name (the direction).")
@click.option("--object", "object_name", default=None,
              help="Spinor or density field name; 'metric' targets the metric itself.")
@click.option("--point", required=True, metavar="X0,X1,…", help="Evaluation point.")
@click.option("--dt", default=1e-4, show_default=True, help="Flow-oracle step.")
@click.option("--cross-check", is_flag=True,
              help="Also evaluate the paired formula/oracle and report the residual.")
@click.option("--xi-frame", default=None, metavar="V0,V1,…",
              help="Frame components for spinor-gauge.")
@click.option("--vertical", default=None, metavar="R;R;…",
              help="Antisymmetric vertical matrix for spinor-gauge.")
@_server_option
def lie(file_path: str, flavour: str, field: str | None, object_name: str | None,
        point: str, dt: float, cross_check: bool, xi_frame: str | None,
        vertical: str | None, server: str | None) -> None:
    """Evaluate a Lie derivative at a point."""
    payload = {
        "geometry": _read_file(file_path),
        "flavour": flavour,
        "point": _parse_reals(point, "point"),
        "field": field,
        "object": object_name,
        "dt": dt,
        "cross_check": cross_check,
        "xi_frame": _parse_reals(xi_frame, "xi-frame") if xi_frame is not None else None,
        "vertical": _parse_matrix(vertical, "vertical") if vertical is not None else None,
    }
    _run("lie", "/lie", payload, server)


@main.command()
@click.option("--file", "file_path", default=None, type=click.Path(), metavar="GEOMETRY",
              help="Run geometry suites on this file instead of the builtin fixtures.")
@click.option("--seed", default=0, show_default=True)
@click.option("--samples", default=None, type=int,
              help="Override each suite's sample count (0 skips everything).")
@_server_option
def verify(file_path: str | None, seed: int, samples: int | None, server: str | None) -> None:
    """Run the randomized verification suites and summarize residuals."""
    payload = {
        "geometry": _read_file(file_path) if file_path is not None else None,
        "seed": seed,
        "samples": samples,
    }
    _run("verify", "/verify", payload, server)


@main.command()
@click.option("--group", required=True, metavar="NAME",
              help="Matrix group: GL(2), SO(2), SO(1,1), or SL(2).")
@click.option("--op", "operation", required=True, type=click.Choice(_JET_OPS))
@click.option("--m", default=2, show_default=True, help="Base dimension of the jets.")
@click.option("--g1-alpha", default=None, metavar="R;R;…")
@click.option("--g1-a", default=None, metavar="R;R;…")
@click.option("--g1-theta", default=None, metavar="M|M|…",
              help="m Lie-algebra matrices separated by '|'.")
@click.option("--g2-alpha", default=None, metavar="R;R;…")
@click.option("--g2-a", default=None, metavar="R;R;…")
@click.option("--g2-theta", default=None, metavar="M|M|…")
@click.option("--nu", default=None, metavar="V0,V1,…", help="Base vector for act-v/act-tau.")
@click.option("--v", default=None, metavar="R;R;…", help="Lie-algebra matrix for actions.")
@click.option("--oracle", is_flag=True,
              help="With mul: include the finite-difference composition residual.")
@_server_option
def jet(group: str, operation: str, m: int, g1_alpha: str | None, g1_a: str | None,
        g1_theta: str | None, g2_alpha: str | None, g2_a: str | None, g2_theta: str | None,
        nu: str | None, v: str | None, oracle: bool, server: str | None) -> None:
    """Operate in the (1,1) jet prolongation of a matrix group."""
    payload = {
        "group": group,
        "operation": operation,
        "m": m,
        "g1": _element_payload(g1_alpha, g1_a, g1_theta, "g1"),
        "g2": _element_payload(g2_alpha, g2_a, g2_theta, "g2"),
        "nu": _parse_reals(nu, "nu") if nu is not None else None,
        "v": _parse_matrix(v, "v") if v is not None else None,
        "oracle": oracle,
    }
    _run("jet", "/jet", payload, server)


def _element_payload(alpha: str | None, a: str | None, theta: str | None,
                     label: str) -> dict | None:
    if alpha is None and a is None and theta is None:
        return None
    return {
        "alpha": _parse_matrix(alpha, f"{label}-alpha") if alpha is not None else None,
        "a": _parse_matrix(a, f"{label}-a") if a is not None else None,
        "theta": _parse_theta(theta, f"{label}-theta") if theta is not None else None,
    }


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(service_app, host=host, port=port)


if __name__ == "__main__":
    main()
