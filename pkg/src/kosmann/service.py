"""HTTP service exposing the library: decompose, lie, verify, jet.

Every endpoint returns a Report (command echo, status, inputs, results).
Library errors are mapped onto the report status rather than HTTP errors —
``input_error`` for malformed inputs, ``precondition_error`` for violated
mathematical preconditions, ``verification_failure`` when a requested check
ran and exceeded its tolerance — so clients recover the exit-code contract
from the body alone.  Malformed request bodies get FastAPI's native 422.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI
from pydantic import BaseModel

from .errors import InputError, KosmannError, PreconditionError
from .geofile import load_geometry
from .geometry import GeometrySpec
from .jets import (
    STANDARD_GROUPS,
    JetGroupElement,
    action_tau,
    action_v,
    action_vertical,
    multiply_oracle,
    w11_inverse,
    w11_multiply,
)
from .liealg import Signature, decompose_gl
from .liederiv import (
    InvariantFieldComponents,
    flow_lie_density_oracle,
    flow_lie_spinor_oracle,
    lichnerowicz,
    lie_density,
    lie_spinor_covariant,
    lie_spinor_gauge_natural,
    lie_spinor_kosmann,
    lie_tensor,
    metric_tensor_field,
    reductive_metric_lie,
)
from .report import (
    STATUS_INPUT_ERROR,
    STATUS_OK,
    STATUS_PRECONDITION_ERROR,
    STATUS_VERIFICATION_FAILURE,
    build_report,
)
from .verify import all_passed, run_verification


class DecomposeRequest(BaseModel):
    matrix: list[list[float]]
    signature: list[int]


class LieRequest(BaseModel):
    geometry: str
    flavour: str
    point: list[float]
    field: str | None = None
    object: str | None = None
    dt: float = 1e-4
    cross_check: bool = False
    xi_frame: list[float] | None = None
    vertical: list[list[float]] | None = None


class VerifyRequest(BaseModel):
    geometry: str | None = None
    seed: int = 0
    samples: int | None = None


class JetElementSpec(BaseModel):
    alpha: list[list[float]] | None = None
    a: list[list[float]] | None = None
    theta: list[list[list[float]]] | None = None


class JetRequest(BaseModel):
    group: str
    operation: str
    m: int = 2
    g1: JetElementSpec | None = None
    g2: JetElementSpec | None = None
    nu: list[float] | None = None
    v: list[list[float]] | None = None
    oracle: bool = False


class Report(BaseModel):
    command: str
    status: str
    error: str | None = None
    inputs: dict
    results: dict


app = FastAPI(title="kosmann", description="Lie derivatives of spinor fields on explicit charts")


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/decompose", response_model=Report)
def decompose_endpoint(request: DecomposeRequest) -> dict:
    return _guarded("decompose", request.model_dump(), lambda: _decompose(request))


@app.post("/lie", response_model=Report)
def lie_endpoint(request: LieRequest) -> dict:
    return _guarded("lie", request.model_dump(), lambda: _lie(request))


@app.post("/verify", response_model=Report)
def verify_endpoint(request: VerifyRequest) -> dict:
    return _guarded("verify", request.model_dump(), lambda: _verify(request))


@app.post("/jet", response_model=Report)
def jet_endpoint(request: JetRequest) -> dict:
    return _guarded("jet", request.model_dump(), lambda: _jet(request))


def _guarded(command: str, inputs: dict, handler) -> dict:
    try:
        results, status = handler()
    except InputError as exc:
        return build_report(command, STATUS_INPUT_ERROR, inputs, {}, error=str(exc))
    except PreconditionError as exc:
        return build_report(command, STATUS_PRECONDITION_ERROR, inputs, {}, error=str(exc))
    except KosmannError as exc:  # pragma: no cover - base-class safety net
        return build_report(command, STATUS_INPUT_ERROR, inputs, {}, error=str(exc))
    error = None if status == STATUS_OK else results.pop("failure", "check failed")
    return build_report(command, status, inputs, results, error=error)


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------


def _decompose(request: DecomposeRequest) -> tuple[dict, str]:
    if len(request.signature) != 2:
        raise InputError(f"signature must be [p, q], got {request.signature}")
    try:
        sig = Signature(*request.signature)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    matrix = np.asarray(request.matrix, dtype=float)
    split = decompose_gl(matrix, sig)
    residual = float(np.max(np.abs(split.reconstruct() - matrix)))
    return (
        {
            "antisym": split.antisym,
            "sym_traceless": split.sym_traceless,
            "trace_coeff": split.trace_coeff,
            "reconstruction_residual": residual,
        },
        STATUS_OK,
    )


_SPINOR_FLAVOURS = {
    "spinor-kosmann": lie_spinor_kosmann,
    "spinor-covariant": lie_spinor_covariant,
    "lichnerowicz": lichnerowicz,
}

_CROSS_CHECKS = {
    # flavour: (partner description, tolerance)
    "spinor-kosmann": ("spinor-covariant", 1e-8),
    "spinor-covariant": ("spinor-kosmann", 1e-8),
    "flow-oracle": ("spinor-kosmann", 1e-3),
    "natural": ("flow-oracle", 1e-4),
    "density": ("flow-oracle", 1e-4),
}


def _lie(request: LieRequest) -> tuple[dict, str]:
    spec = load_geometry(request.geometry)
    point = np.asarray(request.point, dtype=float)
    if point.shape != (spec.dim,):
        raise InputError(f"point must have {spec.dim} coordinates, got {len(request.point)}")
    flavour = request.flavour
    results: dict = {}

    if flavour == "reductive-metric":
        value = reductive_metric_lie(spec, _vector(spec, request.field), point)
        residual = float(np.max(np.abs(value)))
        results = {"value": value, "max_residual": residual, "passed": residual <= 1e-8}
        return results, STATUS_OK

    if flavour in ("natural", "density"):
        field = _vector(spec, request.field)
        tensor = _density(spec, request.object)
        if flavour == "natural":
            value = lie_tensor(spec, field, tensor, point)
        else:
            value = lie_density(spec, field, tensor, point)
        results = {"value": value, "rank": list(tensor.rank), "weight": tensor.weight}
        if request.cross_check:
            oracle = flow_lie_density_oracle(spec, field, tensor, point, dt=request.dt)
            return _with_cross_check(results, flavour, value, oracle)
        return results, STATUS_OK

    if flavour == "spinor-gauge":
        if request.xi_frame is None or request.vertical is None:
            raise InputError("spinor-gauge needs xi_frame and vertical components")
        comps = InvariantFieldComponents(
            xi_frame=np.asarray(request.xi_frame, dtype=float),
            vertical=np.asarray(request.vertical, dtype=float),
        )
        value = lie_spinor_gauge_natural(spec, comps, _spinor(spec, request.object), point)
        return {"value": value}, STATUS_OK

    if flavour == "flow-oracle":
        field = _vector(spec, request.field)
        psi = _spinor(spec, request.object)
        value = flow_lie_spinor_oracle(spec, field, psi, point, dt=request.dt)
        results = {"value": value}
        if request.cross_check:
            other = lie_spinor_kosmann(spec, field, psi, point)
            return _with_cross_check(results, flavour, value, other)
        return results, STATUS_OK

    if flavour in _SPINOR_FLAVOURS:
        field = _vector(spec, request.field)
        psi = _spinor(spec, request.object)
        value = _SPINOR_FLAVOURS[flavour](spec, field, psi, point)
        results = {"value": value}
        if request.cross_check:
            partner, _ = _CROSS_CHECKS.get(flavour, (None, None))
            if partner is None:
                raise InputError(f"no cross-check pair for flavour '{flavour}'")
            other = _SPINOR_FLAVOURS[partner](spec, field, psi, point)
            return _with_cross_check(results, flavour, value, other)
        return results, STATUS_OK

    raise InputError(
        f"unknown flavour '{flavour}'; expected one of natural, density, spinor-kosmann, "
        "spinor-covariant, spinor-gauge, lichnerowicz, reductive-metric, flow-oracle"
    )


def _with_cross_check(results: dict, flavour: str, value, other) -> tuple[dict, str]:
    partner, tolerance = _CROSS_CHECKS[flavour]
    residual = float(np.max(np.abs(np.asarray(value) - np.asarray(other))))
    passed = residual <= tolerance
    results["cross_check"] = {
        "against": partner,
        "residual": residual,
        "tolerance": tolerance,
        "passed": passed,
    }
    if not passed:
        results["failure"] = (
            f"cross-check against {partner} exceeded tolerance: {residual:.3e} > {tolerance}"
        )
        return results, STATUS_VERIFICATION_FAILURE
    return results, STATUS_OK


def _verify(request: VerifyRequest) -> tuple[dict, str]:
    spec = load_geometry(request.geometry) if request.geometry is not None else None
    suites = run_verification(geometry=spec, seed=request.seed, samples=request.samples)
    rows = [
        {
            "name": s.name,
            "samples": s.samples,
            "max_residual": s.max_residual,
            "tolerance": s.tolerance,
            "comparison": s.comparison,
            "passed": s.passed,
        }
        for s in suites
    ]
    ok = all_passed(suites)
    results = {"suites": rows, "all_passed": ok}
    if not ok:
        failed = [s.name for s in suites if not s.passed]
        results["failure"] = f"suites failed: {', '.join(failed)}"
        return results, STATUS_VERIFICATION_FAILURE
    return results, STATUS_OK


def _jet(request: JetRequest) -> tuple[dict, str]:
    if request.group not in STANDARD_GROUPS:
        raise InputError(
            f"unknown group '{request.group}'; available: {sorted(STANDARD_GROUPS)}"
        )
    desc = STANDARD_GROUPS[request.group]
    m = request.m
    op = request.operation

    if op == "mul":
        g1 = _element(desc, m, request.g1, "g1")
        g2 = _element(desc, m, request.g2, "g2")
        product = w11_multiply(g1, g2)
        results = _element_dict(product)
        if request.oracle:
            alpha, a, theta = multiply_oracle(g1, g2)
            residual = max(
                float(np.max(np.abs(product.alpha - alpha))),
                float(np.max(np.abs(product.a - a))),
                max(
                    float(np.max(np.abs(t1 - t2)))
                    for t1, t2 in zip(product.theta, theta)
                ),
            )
            results["oracle_residual"] = residual
        return results, STATUS_OK

    if op == "inv":
        g1 = _element(desc, m, request.g1, "g1")
        return _element_dict(w11_inverse(g1)), STATUS_OK

    if op in ("act-v", "act-tau"):
        g1 = _element(desc, m, request.g1, "g1")
        if request.nu is None or request.v is None:
            raise InputError(f"operation '{op}' needs nu and v")
        nu = np.asarray(request.nu, dtype=float)
        v = np.asarray(request.v, dtype=float)
        action = action_v if op == "act-v" else action_tau
        nu_out, v_out = action(g1, nu, v)
        return {"nu": nu_out, "v": v_out}, STATUS_OK

    if op == "act-vert":
        g1 = _element(desc, m, request.g1, "g1")
        if request.v is None:
            raise InputError("operation 'act-vert' needs v")
        v_out = action_vertical(g1, np.asarray(request.v, dtype=float))
        return {"v": v_out}, STATUS_OK

    raise InputError(
        f"unknown jet operation '{op}'; expected mul, inv, act-v, act-vert, or act-tau"
    )


# ---------------------------------------------------------------------------
# Lookup / construction helpers
# ---------------------------------------------------------------------------


def _vector(spec: GeometrySpec, name: str | None):
    if name is None:
        raise InputError("a vector field name is required (--field)")
    if name not in spec.vector_fields:
        raise InputError(
            f"unknown vector field '{name}'; available: {sorted(spec.vector_fields)}"
        )
    return spec.vector_fields[name]


def _spinor(spec: GeometrySpec, name: str | None):
    if name is None:
        raise InputError("a spinor field name is required (--object)")
    if name not in spec.spinor_fields:
        raise InputError(
            f"unknown spinor field '{name}'; available: {sorted(spec.spinor_fields)}"
        )
    return spec.spinor_fields[name]


def _density(spec: GeometrySpec, name: str | None):
    if name is None:
        raise InputError("a tensor/density field name is required (--object)")
    if name in spec.density_fields:
        return spec.density_fields[name]
    if name == "metric":
        return metric_tensor_field(spec)
    raise InputError(
        f"unknown density field '{name}'; available: "
        f"{sorted(spec.density_fields) + ['metric']}"
    )


def _element(desc, m: int, element: JetElementSpec | None, label: str) -> JetGroupElement:
    n = desc.n
    if element is None:
        element = JetElementSpec()
    alpha = np.eye(m) if element.alpha is None else np.asarray(element.alpha, dtype=float)
    a = np.eye(n) if element.a is None else np.asarray(element.a, dtype=float)
    if element.theta is None:
        theta = tuple(np.zeros((n, n)) for _ in range(m))
    else:
        if len(element.theta) != m:
            raise InputError(f"{label}.theta must list {m} matrices")
        theta = tuple(np.asarray(t, dtype=float) for t in element.theta)
    return JetGroupElement(group=desc, alpha=alpha, a=a, theta=theta)


def _element_dict(g: JetGroupElement) -> dict:
    return {"alpha": g.alpha, "a": g.a, "theta": list(g.theta)}
