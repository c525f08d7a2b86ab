"""Lie derivatives: natural (tensors, densities), spinor flavours, oracles.

Spinor flavours, all returning the same value for the same vector field:

* ``lie_spinor_kosmann``    xi^mu d_mu psi + sigma(K) psi with K the
  antisymmetric part of the lowered natural-lift coefficients.
* ``lie_spinor_covariant``  xi^a nabla_a psi - sigma(nabla_[a xi_b]) psi;
  the recast of the first form through the spin connection.
* ``lichnerowicz``          xi^a nabla_a psi - 1/4 nabla_a xi_b gamma^a gamma^b psi
  with the full covariant derivative; only defined for Killing fields.
* ``lie_spinor_gauge_natural``  prescribed invariant components (xi^a, Xi_ab)
  instead of a vector field.

The spinor covariant derivative used throughout is
``nabla_mu psi = d_mu psi - 1/4 Omega_mu{}_ab gamma^a gamma^b psi`` with
``Omega`` the eta-lowered spin connection; this sign is the one that makes
the Kosmann and covariant forms agree identically (the equality is asserted
numerically in the test suite).

Oracles: ``flow_lie_spinor_oracle`` differentiates parallel-ish transport
along the actual flow (base flow + spin transport dS/dt = -sigma(K) S);
``flow_lie_density_oracle`` differentiates the finite pullback action of the
flow on tensor densities through the tangent flow dA/dt = (dxi) A.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import GammaRep, gamma_matrices, spin_algebra_map
from .errors import InputError, PreconditionError
from .expr import eval_dual
from .geometry import (
    DensityFieldSpec,
    GeometrySpec,
    MetricAt,
    SpinorFieldSpec,
    VectorFieldSpec,
    covariant_derivative_covector,
    frame_at,
    metric_at,
    vector_field_at,
)
from .lifts import FrameLift, metric_lie_residual, natural_lift_coeffs, natural_lift_from_values


# ---------------------------------------------------------------------------
# Pointwise field evaluation helpers
# ---------------------------------------------------------------------------


def spinor_value_at(spec: GeometrySpec, psi: SpinorFieldSpec, point: np.ndarray) -> np.ndarray:
    """Complex spinor components at a point."""
    return np.array(
        [
            complex(eval_dual(re, point).value, eval_dual(im, point).value)
            for re, im in psi.components
        ]
    )


def spinor_jacobian_at(spec: GeometrySpec, psi: SpinorFieldSpec,
                       point: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Value and jacobian jac[mu, i] = d_mu psi_i (complex)."""
    n = len(psi.components)
    m = spec.dim
    value = np.empty(n, dtype=complex)
    jac = np.empty((m, n), dtype=complex)
    for i, (re, im) in enumerate(psi.components):
        dre = eval_dual(re, point)
        dim_ = eval_dual(im, point)
        value[i] = complex(dre.value, dim_.value)
        jac[:, i] = dre.grad + 1j * dim_.grad
    return value, jac


def density_value_at(spec: GeometrySpec, tensor: DensityFieldSpec,
                     point: np.ndarray) -> np.ndarray:
    """Dense component array of shape m^(r+s); absent components are zero."""
    r, s = tensor.rank
    m = spec.dim
    value = np.zeros((m,) * (r + s))
    for idx, node in tensor.components.items():
        _check_index(idx, r + s, m)
        value[idx] = eval_dual(node, point).value
    return value


def density_value_and_grad(spec: GeometrySpec, tensor: DensityFieldSpec,
                           point: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Components and gradient grad[rho, indices...] = d_rho T[indices...]."""
    r, s = tensor.rank
    m = spec.dim
    value = np.zeros((m,) * (r + s))
    grad = np.zeros((m,) + (m,) * (r + s))
    for idx, node in tensor.components.items():
        _check_index(idx, r + s, m)
        d = eval_dual(node, point)
        value[idx] = d.value
        grad[(slice(None),) + idx] = d.grad
    return value, grad


def _check_index(idx: tuple[int, ...], n_indices: int, m: int) -> None:
    if len(idx) != n_indices or any(not (0 <= k < m) for k in idx):
        raise InputError(f"component index {idx} invalid for rank with {n_indices} "
                         f"indices in dimension {m}")


def metric_tensor_field(spec: GeometrySpec) -> DensityFieldSpec:
    """The metric packaged as a rank-(0,2), weight-0 density field."""
    components = {
        (mu, nu): spec.metric[mu][nu] for mu in range(spec.dim) for nu in range(spec.dim)
    }
    return DensityFieldSpec(rank=(0, 2), weight=0.0, components=components)


# ---------------------------------------------------------------------------
# Natural Lie derivatives of tensors and densities
# ---------------------------------------------------------------------------


def lie_tensor(spec: GeometrySpec, field: VectorFieldSpec, tensor: DensityFieldSpec,
               point: np.ndarray) -> np.ndarray:
    """Natural Lie derivative of a weight-0 tensor at a point.

    Transport term plus one -dxi contraction per upper index and one +dxi
    contraction per lower index.
    """
    if tensor.weight != 0.0:
        raise InputError(f"lie_tensor requires weight 0, got {tensor.weight}; use lie_density")
    return _lie_tensor_terms(spec, field, tensor, point)


def lie_density(spec: GeometrySpec, field: VectorFieldSpec, tensor: DensityFieldSpec,
                point: np.ndarray) -> np.ndarray:
    """Lie derivative of a weight-w tensor density: tensor terms + w (div xi) T."""
    return _lie_tensor_terms(spec, field, tensor, point)


def _lie_tensor_terms(spec: GeometrySpec, field: VectorFieldSpec, tensor: DensityFieldSpec,
                      point: np.ndarray) -> np.ndarray:
    r, s = tensor.rank
    value, grad = density_value_and_grad(spec, tensor, point)
    xi, dxi = vector_field_at(spec, field, point)
    result = np.einsum("r,r...->...", xi, grad)
    for axis in range(r):
        # upper index: -(d_rho xi^mu) T^{..rho..}
        term = np.tensordot(dxi, value, axes=(1, axis))
        result -= np.moveaxis(term, 0, axis)
    for axis in range(r, r + s):
        # lower index: +(d_nu xi^rho) T_{..rho..}
        term = np.tensordot(dxi, value, axes=(0, axis))
        result += np.moveaxis(term, 0, axis)
    if tensor.weight != 0.0:
        result = result + tensor.weight * np.trace(dxi) * value
    return result


# ---------------------------------------------------------------------------
# Spinor flavours
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantFieldComponents:
    """Frame components xi^a plus an antisymmetric vertical matrix Xi_ab."""

    xi_frame: np.ndarray
    vertical: np.ndarray


def lie_spinor_kosmann(spec: GeometrySpec, field: VectorFieldSpec, psi: SpinorFieldSpec,
                       point: np.ndarray) -> np.ndarray:
    """xi^mu d_mu psi + sigma(K) psi, K = antisymmetric lowered lift coefficients."""
    rep = gamma_matrices(spec.signature)
    lift = natural_lift_coeffs(spec, field, point)
    value, jac = spinor_jacobian_at(spec, psi, point)
    return lift.xi @ jac + spin_algebra_map(rep, lift.kosmann) @ value


def lie_spinor_gauge_natural(spec: GeometrySpec, comps: InvariantFieldComponents,
                             psi: SpinorFieldSpec, point: np.ndarray) -> np.ndarray:
    """Prescribed invariant components: xi^a e_a psi + sigma(Xi) psi."""
    rep = gamma_matrices(spec.signature)
    fr = frame_at(spec, point)
    xi_frame = np.asarray(comps.xi_frame, dtype=float)
    if xi_frame.shape != (spec.dim,):
        raise InputError(f"expected {spec.dim} frame components, got shape {xi_frame.shape}")
    xi_coord = xi_frame @ fr.e  # xi^mu = xi^a e_a^mu
    value, jac = spinor_jacobian_at(spec, psi, point)
    return xi_coord @ jac + spin_algebra_map(rep, np.asarray(comps.vertical)) @ value


def kosmann_invariant_components(spec: GeometrySpec, field: VectorFieldSpec,
                                 point: np.ndarray) -> InvariantFieldComponents:
    """The invariant components realized by a vector field's Kosmann lift."""
    fr = frame_at(spec, point)
    lift = natural_lift_coeffs(spec, field, point, frame=fr)
    return InvariantFieldComponents(xi_frame=fr.e_inv @ lift.xi, vertical=lift.kosmann)


def _covariant_spinor_jacobian(spec: GeometrySpec, psi: SpinorFieldSpec, point: np.ndarray,
                               rep: GammaRep, metric: MetricAt | None = None):
    """nabla_mu psi = d_mu psi - 1/4 Omega_mu{}_ab gamma^a gamma^b psi."""
    from .geometry import spin_connection, spin_connection_lower

    mt = metric if metric is not None else metric_at(spec, point)
    fr = frame_at(spec, point)
    omega_low = spin_connection_lower(spec, spin_connection(spec, point, metric=mt, frame=fr))
    value, jac = spinor_jacobian_at(spec, psi, point)
    gg = rep.pair_products()
    nabla = jac - 0.25 * np.einsum("mab,abij,j->mi", omega_low, gg, value)
    return value, nabla, mt, fr


def lie_spinor_covariant(spec: GeometrySpec, field: VectorFieldSpec, psi: SpinorFieldSpec,
                         point: np.ndarray) -> np.ndarray:
    """xi^a nabla_a psi - sigma(nabla_[a xi_b]) psi (frame-component antisymmetrization)."""
    rep = gamma_matrices(spec.signature)
    value, nabla, mt, fr = _covariant_spinor_jacobian(spec, psi, point, rep)
    xi, _ = vector_field_at(spec, field, point)
    nab = covariant_derivative_covector(spec, field, point, metric=mt)  # nabla_mu xi_nu
    nab_frame = np.einsum("am,bn,mn->ab", fr.e, fr.e, nab)
    asym = 0.5 * (nab_frame - nab_frame.T)
    return xi @ nabla - spin_algebra_map(rep, asym) @ value


def lichnerowicz(spec: GeometrySpec, field: VectorFieldSpec, psi: SpinorFieldSpec,
                 point: np.ndarray) -> np.ndarray:
    """xi^a nabla_a psi - 1/4 nabla_a xi_b gamma^a gamma^b psi, Killing fields only."""
    residual = killing_residual(spec, field, point)
    if residual > 1e-8:
        raise PreconditionError(
            f"field is not Killing at point {np.asarray(point).tolist()}: "
            f"killing residual {residual:.3e} exceeds 1e-08"
        )
    rep = gamma_matrices(spec.signature)
    value, nabla, mt, fr = _covariant_spinor_jacobian(spec, psi, point, rep)
    xi, _ = vector_field_at(spec, field, point)
    nab = covariant_derivative_covector(spec, field, point, metric=mt)
    nab_frame = np.einsum("am,bn,mn->ab", fr.e, fr.e, nab)
    # full, un-antisymmetrized contraction (Killing makes it antisymmetric anyway)
    op = 0.25 * np.einsum("ab,abij->ij", nab_frame, rep.pair_products())
    return xi @ nabla - op @ value


# ---------------------------------------------------------------------------
# Metric-flavoured derivatives
# ---------------------------------------------------------------------------


def reductive_metric_lie(spec: GeometrySpec, field: VectorFieldSpec,
                         point: np.ndarray) -> np.ndarray:
    """Metric response along the Kosmann-generated flow; identically zero."""
    return metric_lie_residual(spec, field, point)


def killing_residual(spec: GeometrySpec, field: VectorFieldSpec, point: np.ndarray) -> float:
    """max |nabla_mu xi_nu + nabla_nu xi_mu|; zero iff xi is Killing at the point."""
    nab = covariant_derivative_covector(spec, field, point)
    return float(np.max(np.abs(nab + nab.T)))


# ---------------------------------------------------------------------------
# Flow-based oracles
# ---------------------------------------------------------------------------


def _rk4_path(rhs, x0, aux0, t_total: float, n_steps: int):
    """Fixed-step RK4 on the joint state (point, auxiliary matrix)."""
    h = t_total / n_steps
    x, aux = np.array(x0, dtype=float), np.array(aux0)
    for _ in range(n_steps):
        k1x, k1a = rhs(x, aux)
        k2x, k2a = rhs(x + 0.5 * h * k1x, aux + 0.5 * h * k1a)
        k3x, k3a = rhs(x + 0.5 * h * k2x, aux + 0.5 * h * k2a)
        k4x, k4a = rhs(x + h * k3x, aux + h * k3a)
        x = x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        aux = aux + (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
    return x, aux


def _integrate(rhs, x0, aux0, t_total: float, tol: float = 1e-12, max_doublings: int = 6):
    """RK4 with step doubling until two resolutions agree to ``tol``."""
    n = 1
    x, aux = _rk4_path(rhs, x0, aux0, t_total, n)
    for _ in range(max_doublings):
        n *= 2
        x2, aux2 = _rk4_path(rhs, x0, aux0, t_total, n)
        change = max(np.max(np.abs(x2 - x)), np.max(np.abs(aux2 - aux)))
        if change <= tol:
            return x2, aux2
        x, aux = x2, aux2
    raise PreconditionError(
        f"flow integration over t = {t_total} did not converge to {tol} "
        f"after {n} RK4 steps"
    )


def flow_lie_spinor_oracle(spec: GeometrySpec, field: VectorFieldSpec, psi: SpinorFieldSpec,
                           point: np.ndarray, dt: float = 1e-4) -> np.ndarray:
    """Central difference of spin-transported pullbacks along the actual flow.

    Integrates dx/dt = xi(x) together with dS/dt = -sigma(K(x(t))) S, then
    returns (S(dt)^-1 psi(x(dt)) - S(-dt)^-1 psi(x(-dt))) / (2 dt).
    """
    rep = gamma_matrices(spec.signature)
    eye = np.eye(rep.n_spinor, dtype=complex)

    def rhs(x, s):
        lift = natural_lift_coeffs(spec, field, x)
        return lift.xi, -spin_algebra_map(rep, lift.kosmann) @ s

    x_plus, s_plus = _integrate(rhs, point, eye, dt)
    x_minus, s_minus = _integrate(rhs, point, eye, -dt)
    pulled_plus = np.linalg.solve(s_plus, spinor_value_at(spec, psi, x_plus))
    pulled_minus = np.linalg.solve(s_minus, spinor_value_at(spec, psi, x_minus))
    return (pulled_plus - pulled_minus) / (2.0 * dt)


def flow_lie_density_oracle(spec: GeometrySpec, field: VectorFieldSpec,
                            tensor: DensityFieldSpec, point: np.ndarray,
                            dt: float = 1e-4) -> np.ndarray:
    """Central difference of the finite pullback action on a tensor density.

    The tangent flow A(t) = D phi_t(pt) obeys dA/dt = dxi(x(t)) A; the finite
    action contracts each upper index with A^-1, each lower index with A, and
    multiplies by det(A)^w.
    """
    r, s = tensor.rank
    m = spec.dim

    def rhs(x, a):
        xi, dxi = vector_field_at(spec, field, x)
        return xi, dxi @ a

    def pullback(t: float) -> np.ndarray:
        x_t, a_t = _integrate(rhs, point, np.eye(m), t)
        value = density_value_at(spec, tensor, x_t)
        a_inv = np.linalg.inv(a_t)
        for axis in range(r):
            value = np.moveaxis(np.tensordot(a_inv, value, axes=(1, axis)), 0, axis)
        for axis in range(r, r + s):
            value = np.moveaxis(np.tensordot(a_t, value, axes=(0, axis)), 0, axis)
        return float(np.linalg.det(a_t)) ** tensor.weight * value

    return (pullback(dt) - pullback(-dt)) / (2.0 * dt)


# ---------------------------------------------------------------------------
# Commutator defect
# ---------------------------------------------------------------------------


def bracket_value(spec: GeometrySpec, xi: VectorFieldSpec, zeta: VectorFieldSpec,
                  point: np.ndarray) -> np.ndarray:
    """[xi, zeta]^mu = xi^nu d_nu zeta^mu - zeta^nu d_nu xi^mu, exactly (dual numbers)."""
    xv, dxv = vector_field_at(spec, xi, point)
    zv, dzv = vector_field_at(spec, zeta, point)
    return dzv @ xv - dxv @ zv


def _kosmann_along_values(spec: GeometrySpec, xi: np.ndarray, dxi: np.ndarray,
                          psi: SpinorFieldSpec, point: np.ndarray) -> np.ndarray:
    rep = gamma_matrices(spec.signature)
    lift = natural_lift_from_values(spec, xi, dxi, point)
    value, jac = spinor_jacobian_at(spec, psi, point)
    return lift.xi @ jac + spin_algebra_map(rep, lift.kosmann) @ value


def commutator_defect(spec: GeometrySpec, xi: VectorFieldSpec, zeta: VectorFieldSpec,
                      psi: SpinorFieldSpec, point: np.ndarray,
                      fd_step: float = 1e-4) -> np.ndarray:
    """D = L_xi(L_zeta psi) - L_zeta(L_xi psi) - L_[xi,zeta] psi.

    The outer derivatives act on the numerically-defined spinor fields
    pt -> L psi(pt) with central differences of step ``fd_step``; the bracket
    field's jacobian uses the same step on exact bracket values.
    """
    point = np.asarray(point, dtype=float)
    m = spec.dim

    def outer(field: VectorFieldSpec, inner_fn) -> np.ndarray:
        rep = gamma_matrices(spec.signature)
        lift = natural_lift_coeffs(spec, field, point)
        value = inner_fn(point)
        deriv = np.zeros_like(value)
        for mu in range(m):
            step = np.zeros(m)
            step[mu] = fd_step
            deriv += lift.xi[mu] * (inner_fn(point + step) - inner_fn(point - step)) / (
                2.0 * fd_step
            )
        return deriv + spin_algebra_map(rep, lift.kosmann) @ value

    term_xi = outer(xi, lambda p: lie_spinor_kosmann(spec, zeta, psi, p))
    term_zeta = outer(zeta, lambda p: lie_spinor_kosmann(spec, xi, psi, p))

    bracket = bracket_value(spec, xi, zeta, point)
    dbracket = np.empty((m, m))
    for nu in range(m):
        step = np.zeros(m)
        step[nu] = fd_step
        dbracket[:, nu] = (
            bracket_value(spec, xi, zeta, point + step)
            - bracket_value(spec, xi, zeta, point - step)
        ) / (2.0 * fd_step)
    term_bracket = _kosmann_along_values(spec, bracket, dbracket, psi, point)
    return term_xi - term_zeta - term_bracket


def lift_for_field(spec: GeometrySpec, field: VectorFieldSpec,
                   point: np.ndarray) -> FrameLift:
    """Convenience re-export used by the service layer."""
    return natural_lift_coeffs(spec, field, point)
