"""Chart-level pseudo-Riemannian geometry evaluated at points.

A :class:`GeometrySpec` holds a coordinate chart (dimension, signature,
coordinate names), a symmetric table of metric component expressions and any
number of named vector / spinor / density fields.  Everything downstream is
pointwise: metric with inverse and first derivatives, a signature-aware
orthonormal frame with its derivatives (obtained by running the whole frame
construction on dual numbers), Christoffel symbols, the spin connection, and
covariant derivatives of covectors.

Index conventions for returned arrays:
    g[mu, nu], g_inv[mu, nu], dg[rho, mu, nu] = d_rho g_{mu nu}
    e[a, mu] = e_a^mu, e_inv[a, mu] = (e~)^a_mu, de[a, mu, nu] = d_nu e_a^mu
    gamma[rho, mu, nu] = Gamma^rho_{mu nu}
    omega[mu, a, b] = omega_mu{}^a{}_b,  omega_lower[mu, a, b] = eta_ac omega_mu{}^c{}_b
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import InputError, PreconditionError
from .expr import Dual, Node, dual_sqrt, eval_dual, parse
from .liealg import Signature, eta_matrix


@dataclass(frozen=True)
class VectorFieldSpec:
    """Contravariant components xi^mu as expressions."""

    components: tuple[Node, ...]


@dataclass(frozen=True)
class SpinorFieldSpec:
    """N complex components, each a (real, imaginary) expression pair."""

    components: tuple[tuple[Node, Node], ...]


@dataclass(frozen=True)
class DensityFieldSpec:
    """Tensor density: rank (r, s), weight w, one expression per component.

    ``components`` maps index tuples (r upper indices then s lower ones) to
    expressions; missing entries mean zero.
    """

    rank: tuple[int, int]
    weight: float
    components: dict[tuple[int, ...], Node]


@dataclass(frozen=True)
class GeometrySpec:
    dim: int
    signature: Signature
    coord_names: tuple[str, ...]
    metric: tuple[tuple[Node, ...], ...]
    vector_fields: dict[str, VectorFieldSpec] = dataclass_field(default_factory=dict)
    spinor_fields: dict[str, SpinorFieldSpec] = dataclass_field(default_factory=dict)
    density_fields: dict[str, DensityFieldSpec] = dataclass_field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.dim != self.signature.dim:
            raise InputError(
                f"dimension {self.dim} does not match signature "
                f"({self.signature.p}, {self.signature.q})"
            )
        if len(self.coord_names) != self.dim:
            raise InputError(f"expected {self.dim} coordinate names, got {len(self.coord_names)}")

    @property
    def n_spinor(self) -> int:
        return 2 ** (self.dim // 2)


def metric_from_strings(dim: int, signature: Signature, coord_names: list[str],
                        entries: list[list[str]]) -> tuple[tuple[Node, ...], ...]:
    """Parse an m x m table of metric component strings."""
    return tuple(
        tuple(parse(entries[mu][nu], coord_names) for nu in range(dim)) for mu in range(dim)
    )


def vector_field_from_strings(spec: GeometrySpec, components: list[str]) -> VectorFieldSpec:
    if len(components) != spec.dim:
        raise InputError(f"vector field needs {spec.dim} components, got {len(components)}")
    names = list(spec.coord_names)
    return VectorFieldSpec(tuple(parse(c, names) for c in components))


@dataclass(frozen=True)
class MetricAt:
    g: np.ndarray
    g_inv: np.ndarray
    dg: np.ndarray


@dataclass(frozen=True)
class FrameAt:
    e: np.ndarray
    e_inv: np.ndarray
    de: np.ndarray


def metric_at(spec: GeometrySpec, point: np.ndarray) -> MetricAt:
    """Metric, inverse and first derivatives at a point, with signature check."""
    point = _check_point(spec, point)
    m = spec.dim
    g = np.empty((m, m))
    dg = np.empty((m, m, m))
    for mu in range(m):
        for nu in range(m):
            d = eval_dual(spec.metric[mu][nu], point)
            g[mu, nu] = d.value
            dg[:, mu, nu] = d.grad
    eigenvalues = np.linalg.eigvalsh(g)
    if np.min(np.abs(eigenvalues)) < 1e-10:
        raise PreconditionError(f"metric is singular at point {point.tolist()}")
    plus, minus = int(np.sum(eigenvalues > 0)), int(np.sum(eigenvalues < 0))
    if (plus, minus) != (spec.signature.p, spec.signature.q):
        raise PreconditionError(
            f"metric has signature ({plus}, {minus}) at point {point.tolist()}, "
            f"expected ({spec.signature.p}, {spec.signature.q})"
        )
    return MetricAt(g=g, g_inv=np.linalg.inv(g), dg=dg)


def frame_at(spec: GeometrySpec, point: np.ndarray) -> FrameAt:
    """Orthonormal frame e_a^mu with g(e_a, e_b) = eta_ab, positive norms first.

    Signature-aware Gram-Schmidt on the coordinate basis run over dual
    numbers, so the frame derivatives come out of the same pass.  Coordinate
    orderings are tried lexicographically until one succeeds without a
    breakdown and with the (+^p, -^q) sign pattern.
    """
    point = _check_point(spec, point)
    metric_at(spec, point)  # surface singular/wrong-signature errors first
    m = spec.dim
    g_dual = [[eval_dual(spec.metric[mu][nu], point) for nu in range(m)] for mu in range(m)]

    def inner(u: list[Dual], v: list[Dual]) -> Dual:
        acc = Dual.constant(0.0, m)
        for mu in range(m):
            for nu in range(m):
                acc = acc + g_dual[mu][nu] * u[mu] * v[nu]
        return acc

    target_signs = [1.0] * spec.signature.p + [-1.0] * spec.signature.q
    for order in itertools.permutations(range(m)):
        frame: list[list[Dual]] = []
        signs: list[float] = []
        ok = True
        for mu in order:
            v = [Dual.constant(1.0 if nu == mu else 0.0, m) for nu in range(m)]
            for prev, sign in zip(frame, signs):
                coeff = inner(v, prev) * sign  # divide by g(prev, prev) = sign
                v = [v[nu] - coeff * prev[nu] for nu in range(m)]
            norm_sq = inner(v, v)
            if abs(norm_sq.value) < 1e-12:
                ok = False
                break
            sign = 1.0 if norm_sq.value > 0 else -1.0
            scale = dual_sqrt(Dual(abs(norm_sq.value), sign * norm_sq.grad))
            frame.append([v[nu] / scale for nu in range(m)])
            signs.append(sign)
        if ok and signs == target_signs:
            e = np.array([[frame[a][mu].value for mu in range(m)] for a in range(m)])
            de = np.array(
                [[frame[a][mu].grad for mu in range(m)] for a in range(m)]
            )  # de[a, mu, nu]
            return FrameAt(e=e, e_inv=np.linalg.inv(e.T), de=de)
    raise PreconditionError(
        f"orthonormal frame construction broke down at point {point.tolist()} "
        "for every coordinate ordering"
    )


def christoffel(spec: GeometrySpec, point: np.ndarray,
                metric: MetricAt | None = None) -> np.ndarray:
    """Levi-Civita symbols Gamma^rho_{mu nu} from the metric and its gradient."""
    mt = metric if metric is not None else metric_at(spec, point)
    m = spec.dim
    # dg[mu, sigma, nu] + dg[nu, sigma, mu] - dg[sigma, mu, nu], contracted with g^{rho sigma}/2
    bracket = np.empty((m, m, m))
    for sigma in range(m):
        for mu in range(m):
            for nu in range(m):
                bracket[sigma, mu, nu] = (
                    mt.dg[mu, sigma, nu] + mt.dg[nu, sigma, mu] - mt.dg[sigma, mu, nu]
                )
    return 0.5 * np.einsum("rs,smn->rmn", mt.g_inv, bracket)


def spin_connection(spec: GeometrySpec, point: np.ndarray,
                    metric: MetricAt | None = None,
                    frame: FrameAt | None = None) -> np.ndarray:
    """Spin connection omega[mu, a, b] = e~^a_rho (d_mu e_b^rho + Gamma^rho_{mu sigma} e_b^sigma)."""
    mt = metric if metric is not None else metric_at(spec, point)
    fr = frame if frame is not None else frame_at(spec, point)
    gamma = christoffel(spec, point, metric=mt)
    m = spec.dim
    # nabla_mu e_b^rho
    grad_e = np.einsum("brm->mrb", fr.de) + np.einsum("rms,bs->mrb", gamma, fr.e)
    omega = np.einsum("ar,mrb->mab", fr.e_inv, grad_e)
    return omega


def spin_connection_lower(spec: GeometrySpec, omega: np.ndarray) -> np.ndarray:
    """Lower the first frame index with eta: antisymmetric in (a, b)."""
    eta = eta_matrix(spec.signature)
    return np.einsum("ac,mcb->mab", eta, omega)


def vector_field_at(spec: GeometrySpec, field: VectorFieldSpec,
                    point: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Components and Jacobian: xi[rho], dxi[rho, mu] = d_mu xi^rho."""
    point = _check_point(spec, point)
    m = spec.dim
    xi = np.empty(m)
    dxi = np.empty((m, m))
    for rho in range(m):
        d = eval_dual(field.components[rho], point)
        xi[rho] = d.value
        dxi[rho] = d.grad
    return xi, dxi


def covariant_derivative_covector(spec: GeometrySpec, field: VectorFieldSpec,
                                  point: np.ndarray,
                                  metric: MetricAt | None = None) -> np.ndarray:
    """nabla_mu xi_nu for the metric-lowered field, returned as result[mu, nu]."""
    point = _check_point(spec, point)
    mt = metric if metric is not None else metric_at(spec, point)
    gamma = christoffel(spec, point, metric=mt)
    xi, dxi = vector_field_at(spec, field, point)
    xi_lower = mt.g @ xi
    # d_mu xi_nu = d_mu(g_{nu rho} xi^rho)
    d_lower = np.einsum("mnr,r->mn", mt.dg, xi) + np.einsum("nr,rm->mn", mt.g, dxi)
    return d_lower - np.einsum("rmn,r->mn", gamma, xi_lower)


def _check_point(spec: GeometrySpec, point) -> np.ndarray:
    point = np.asarray(point, dtype=float)
    if point.shape != (spec.dim,):
        raise InputError(f"expected a point with {spec.dim} coordinates, got shape {point.shape}")
    return point
