"""Lifting vector fields to the frame bundle and splitting the result.

Given a vector field xi on the base, its natural lift acts on an orthonormal
frame; the resulting gl(m)-valued coefficient matrix is

    L[a, b] = e~^a_rho (d_nu xi^rho e_b^nu - xi^nu d_nu e_b^rho).

Lowering the first index with eta and splitting into plain antisymmetric and
symmetric parts gives the metric-compatible generator (the Kosmann part K)
and the obstruction to xi being Killing (the complement V):

    L_lower = eta L,   K = (L_lower - L_lower^T) / 2,   V = (L_lower + L_lower^T) / 2.

The Kosmann part alone, pushed back to coordinate indices and combined with
frame transport, defines a coordinate endomorphism

    (xi_K)^rho_nu = e_a^rho eta^{ac} K[c, b] e~^b_nu + xi^tau (d_tau e_a^rho) e~^a_nu

whose symmetrization against the metric reproduces -xi^rho d_rho g exactly;
that identity is what the verification suites check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    FrameAt,
    GeometrySpec,
    MetricAt,
    VectorFieldSpec,
    frame_at,
    metric_at,
    vector_field_at,
)
from .liealg import eta_matrix


@dataclass(frozen=True)
class FrameLift:
    """Natural-lift data for one vector field at one point.

    coeffs:       L[a, b] with the first index up (gl-valued).
    lowered:      eta_ac L[c, b], both indices down.
    kosmann:      antisymmetric part of ``lowered``.
    complement:   symmetric part of ``lowered`` (zero iff xi is Killing here).
    xi, dxi:      field value and Jacobian dxi[rho, nu] = d_nu xi^rho.
    """

    coeffs: np.ndarray
    lowered: np.ndarray
    kosmann: np.ndarray
    complement: np.ndarray
    xi: np.ndarray
    dxi: np.ndarray


def natural_lift_coeffs(spec: GeometrySpec, field: VectorFieldSpec, point: np.ndarray,
                        frame: FrameAt | None = None) -> FrameLift:
    """Evaluate the natural lift of ``field`` through the orthonormal frame.

    Passing ``frame`` overrides the constructed frame; the equivariance tests
    use that to rotate the frame by a constant eta-orthogonal matrix.
    """
    xi, dxi = vector_field_at(spec, field, point)
    return natural_lift_from_values(spec, xi, dxi, point, frame=frame)


def natural_lift_from_values(spec: GeometrySpec, xi: np.ndarray, dxi: np.ndarray,
                             point: np.ndarray, frame: FrameAt | None = None) -> FrameLift:
    """Natural lift from a field's pointwise value and Jacobian.

    Entry point for fields that exist only numerically (e.g. a commutator of
    two expression-backed fields, whose Jacobian comes from finite
    differences).
    """
    fr = frame if frame is not None else frame_at(spec, point)
    # transport of the frame along xi: xi^nu d_nu e_b^rho
    transport = np.einsum("n,brn->rb", xi, fr.de)
    pushed = np.einsum("rn,bn->rb", dxi, fr.e) - transport
    coeffs = np.einsum("ar,rb->ab", fr.e_inv, pushed)
    eta = eta_matrix(spec.signature)
    lowered = eta @ coeffs
    kosmann = 0.5 * (lowered - lowered.T)
    complement = 0.5 * (lowered + lowered.T)
    return FrameLift(
        coeffs=coeffs, lowered=lowered, kosmann=kosmann, complement=complement, xi=xi, dxi=dxi
    )


def rotate_frame(fr: FrameAt, rotation: np.ndarray) -> FrameAt:
    """Frame rotated by a constant matrix O: e'_a = O^b_a e_b (O constant, so
    derivatives rotate the same way)."""
    e = np.einsum("ba,bm->am", rotation, fr.e)
    de = np.einsum("ba,bmn->amn", rotation, fr.de)
    return FrameAt(e=e, e_inv=np.linalg.inv(e.T), de=de)


def kosmann_coordinate_matrix(spec: GeometrySpec, field: VectorFieldSpec, point: np.ndarray,
                              frame: FrameAt | None = None,
                              lift: FrameLift | None = None) -> np.ndarray:
    """Coordinate endomorphism (xi_K)^rho_nu generated by the Kosmann part.

    Built from the antisymmetric frame generator plus frame transport; on a
    flat chart with a Killing field it reduces to the Jacobian d_nu xi^rho.
    """
    fr = frame if frame is not None else frame_at(spec, point)
    lf = lift if lift is not None else natural_lift_coeffs(spec, field, point, frame=fr)
    eta = eta_matrix(spec.signature)  # eta inverse equals eta
    raised = eta @ lf.kosmann  # eta^{ac} K[c, b]
    body = np.einsum("ar,ab,bn->rn", fr.e, raised, fr.e_inv)
    transport = np.einsum("t,art,an->rn", lf.xi, fr.de, fr.e_inv)
    return body + transport


def metric_lie_residual(spec: GeometrySpec, field: VectorFieldSpec, point: np.ndarray,
                        metric: MetricAt | None = None) -> np.ndarray:
    """xi^rho d_rho g_{mu nu} + g_{rho mu} (xi_K)^rho_nu + g_{rho nu} (xi_K)^rho_mu.

    Identically zero when the coordinate matrix carries the full metric
    response to the flow; returned per component so tests can take a max.
    """
    mt = metric if metric is not None else metric_at(spec, point)
    xk = kosmann_coordinate_matrix(spec, field, point)
    xi, _ = vector_field_at(spec, field, point)
    drag = np.einsum("r,rmn->mn", xi, mt.dg)
    return drag + np.einsum("rm,rn->mn", mt.g, xk) + np.einsum("rn,rm->mn", mt.g, xk)
