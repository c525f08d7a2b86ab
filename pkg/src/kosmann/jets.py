"""The (1,1) principal prolongation group of a matrix group G.

An element is a triple (alpha, a, theta): alpha in GL(m) is the frame part,
a in G the group part, and theta = (theta_1, ..., theta_m) in Lie(G)^m the
first-jet part in left-logarithmic coordinates — the representative map is
a(x) = a * exp(x^l theta_l), so theta_l = d_l(a(0)^-1 a(x))|_0.

Composing representatives alpha(x) = A x, a(x) = a0 exp(x^k theta_k) with
beta(x) = B x, b(x) = b0 exp(x^k phi_k) gives the product representative
c(x) = a(B x) * b(x), whose jet coordinates reduce to the closed-form law

    (A, a0, theta) * (B, b0, phi) = (A B, a0 b0, Ad_{b0^-1}(theta_k) B^k_l + phi_l).

``multiply_oracle`` re-extracts the same coordinates from c(x) by central
finite differences, with no reference to the closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import expm

from .errors import InputError, PreconditionError
from .liealg import Signature, eta_matrix


@dataclass(frozen=True)
class GroupDescriptor:
    """A matrix group: size, membership residuals, and random sampling."""

    name: str
    n: int
    group_residual: Callable[[np.ndarray], float]
    algebra_residual: Callable[[np.ndarray], float]
    random_algebra: Callable[[np.random.Generator], np.ndarray]

    def random_group(self, rng: np.random.Generator) -> np.ndarray:
        """A group element in the identity component, via the exponential."""
        return expm(self.random_algebra(rng))

    def check_group(self, mat: np.ndarray, tol: float = 1e-8) -> None:
        residual = self.group_residual(np.asarray(mat, dtype=float))
        if residual > tol:
            raise PreconditionError(
                f"matrix is not in {self.name} (membership residual {residual:.3e})"
            )

    def check_algebra(self, mat: np.ndarray, tol: float = 1e-10) -> None:
        residual = self.algebra_residual(np.asarray(mat, dtype=float))
        if residual > tol:
            raise PreconditionError(
                f"matrix is not in the Lie algebra of {self.name} "
                f"(membership residual {residual:.3e})"
            )


def _invertible_residual(mat: np.ndarray) -> float:
    return 0.0 if abs(np.linalg.det(mat)) > 1e-12 else np.inf


def gl_group(n: int) -> GroupDescriptor:
    return GroupDescriptor(
        name=f"GL({n})",
        n=n,
        group_residual=_invertible_residual,
        algebra_residual=lambda x: 0.0,
        random_algebra=lambda rng: rng.normal(size=(n, n)) * 0.5,
    )


def sl_group(n: int) -> GroupDescriptor:
    def traceless(rng: np.random.Generator) -> np.ndarray:
        x = rng.normal(size=(n, n)) * 0.5
        return x - (np.trace(x) / n) * np.eye(n)

    return GroupDescriptor(
        name=f"SL({n})",
        n=n,
        group_residual=lambda g: abs(np.linalg.det(g) - 1.0),
        algebra_residual=lambda x: abs(np.trace(x)),
        random_algebra=traceless,
    )


def so_group(signature: Signature) -> GroupDescriptor:
    eta = eta_matrix(signature)
    n = signature.dim

    def group_residual(g: np.ndarray) -> float:
        if abs(np.linalg.det(g) - 1.0) > 1e-8:
            return np.inf
        return float(np.max(np.abs(g.T @ eta @ g - eta)))

    def algebra_residual(x: np.ndarray) -> float:
        return float(np.max(np.abs(eta @ x.T @ eta + x)))

    def random_algebra(rng: np.random.Generator) -> np.ndarray:
        m = rng.normal(size=(n, n)) * 0.5
        return 0.5 * (m - eta @ m.T @ eta)

    return GroupDescriptor(
        name=f"SO({signature.p},{signature.q})",
        n=n,
        group_residual=group_residual,
        algebra_residual=algebra_residual,
        random_algebra=random_algebra,
    )


STANDARD_GROUPS: dict[str, GroupDescriptor] = {
    "GL(2)": gl_group(2),
    "SO(2)": so_group(Signature(2, 0)),
    "SO(1,1)": so_group(Signature(1, 1)),
    "SL(2)": sl_group(2),
}


@dataclass(frozen=True)
class JetGroupElement:
    """(alpha, a, theta) with alpha in GL(m), a in G, theta_l in Lie(G)."""

    group: GroupDescriptor
    alpha: np.ndarray
    a: np.ndarray
    theta: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        m = self.m
        n = self.group.n
        if self.alpha.shape != (m, m):
            raise InputError(f"alpha must be square, got shape {self.alpha.shape}")
        if abs(np.linalg.det(self.alpha)) < 1e-12:
            raise PreconditionError("alpha part is singular")
        if self.a.shape != (n, n):
            raise InputError(f"group part must be {n}x{n}, got shape {self.a.shape}")
        self.group.check_group(self.a)
        for l, th in enumerate(self.theta):
            if th.shape != (n, n):
                raise InputError(f"theta[{l}] must be {n}x{n}, got shape {th.shape}")
            self.group.check_algebra(th)

    @property
    def m(self) -> int:
        return self.alpha.shape[0]


def w11_identity(m: int, desc: GroupDescriptor) -> JetGroupElement:
    """(I, I, 0)."""
    zero = np.zeros((desc.n, desc.n))
    return JetGroupElement(
        group=desc, alpha=np.eye(m), a=np.eye(desc.n), theta=tuple(zero.copy() for _ in range(m))
    )


def _adjoint(g: np.ndarray, x: np.ndarray) -> np.ndarray:
    return g @ x @ np.linalg.inv(g)


def w11_multiply(g1: JetGroupElement, g2: JetGroupElement) -> JetGroupElement:
    """Closed-form composition of first-jet representatives (see module docstring)."""
    if g1.group.name != g2.group.name or g1.m != g2.m:
        raise InputError(
            f"cannot compose elements over {g1.group.name} (m={g1.m}) "
            f"and {g2.group.name} (m={g2.m})"
        )
    b0_inv = np.linalg.inv(g2.a)
    conjugated = [b0_inv @ g1.theta[k] @ g2.a for k in range(g1.m)]  # Ad_{b0^-1}(theta_k)
    theta = tuple(
        sum(
            (conjugated[k] * g2.alpha[k, l] for k in range(g1.m)),
            start=np.zeros((g1.group.n, g1.group.n)),
        )
        + g2.theta[l]
        for l in range(g1.m)
    )
    return JetGroupElement(group=g1.group, alpha=g1.alpha @ g2.alpha, a=g1.a @ g2.a, theta=theta)


def w11_inverse(g: JetGroupElement) -> JetGroupElement:
    """(alpha^-1, a^-1, -Ad_a(theta_k) (alpha^-1)^k_l)."""
    alpha_inv = np.linalg.inv(g.alpha)
    a_inv = np.linalg.inv(g.a)
    theta = tuple(
        -sum(
            (_adjoint(g.a, g.theta[k]) * alpha_inv[k, l] for k in range(g.m)),
            start=np.zeros((g.group.n, g.group.n)),
        )
        for l in range(g.m)
    )
    return JetGroupElement(group=g.group, alpha=alpha_inv, a=a_inv, theta=theta)


def action_v(g: JetGroupElement, nu: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(alpha nu, Ad_a(v + theta_j nu^j))."""
    nu = np.asarray(nu, dtype=float)
    v = np.asarray(v, dtype=float)
    if nu.shape != (g.m,):
        raise InputError(f"expected nu with {g.m} entries, got shape {nu.shape}")
    if v.shape != (g.group.n, g.group.n):
        raise InputError(f"expected a {g.group.n}x{g.group.n} algebra matrix, got {v.shape}")
    g.group.check_algebra(v)
    shifted = v + sum(g.theta[j] * nu[j] for j in range(g.m))
    return g.alpha @ nu, _adjoint(g.a, shifted)


def action_vertical(g: JetGroupElement, v: np.ndarray) -> np.ndarray:
    """Ad_a(v): the vertical restriction of action_v (theta drops out)."""
    v = np.asarray(v, dtype=float)
    if v.shape != (g.group.n, g.group.n):
        raise InputError(f"expected a {g.group.n}x{g.group.n} algebra matrix, got {v.shape}")
    g.group.check_algebra(v)
    return _adjoint(g.a, v)


def action_tau(g: JetGroupElement, nu: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(alpha nu, v + theta_j nu^j); requires the group part to be the identity."""
    deviation = float(np.max(np.abs(g.a - np.eye(g.group.n))))
    if deviation > 1e-10:
        raise PreconditionError(
            f"action requires a kernel element (group part = identity); "
            f"deviation {deviation:.3e}"
        )
    nu = np.asarray(nu, dtype=float)
    v = np.asarray(v, dtype=float)
    if nu.shape != (g.m,):
        raise InputError(f"expected nu with {g.m} entries, got shape {nu.shape}")
    g.group.check_algebra(v)
    return g.alpha @ nu, v + sum(g.theta[j] * nu[j] for j in range(g.m))


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def representative(g: JetGroupElement) -> Callable[[np.ndarray], np.ndarray]:
    """The map x -> a * exp(x^l theta_l) realizing g's group-part jet."""

    def rep(x: np.ndarray) -> np.ndarray:
        exponent = sum(
            (g.theta[l] * x[l] for l in range(g.m)),
            start=np.zeros((g.group.n, g.group.n)),
        )
        return g.a @ expm(exponent)

    return rep


def multiply_oracle(g1: JetGroupElement, g2: JetGroupElement,
                    h: float = 1e-5) -> tuple[np.ndarray, np.ndarray, tuple[np.ndarray, ...]]:
    """Compose explicit representative maps and re-extract jet coordinates.

    The product representative is c(x) = a1(alpha2 x) * a2(x); the returned
    theta components are central differences of c(0)^-1 c(x) at 0.
    """
    rep1, rep2 = representative(g1), representative(g2)

    def c(x: np.ndarray) -> np.ndarray:
        return rep1(g2.alpha @ x) @ rep2(x)

    m = g1.m
    c0 = c(np.zeros(m))
    c0_inv = np.linalg.inv(c0)
    theta = []
    for l in range(m):
        step = np.zeros(m)
        step[l] = h
        theta.append((c0_inv @ c(step) - c0_inv @ c(-step)) / (2.0 * h))
    return g1.alpha @ g2.alpha, c0, tuple(theta)


def random_element(desc: GroupDescriptor, m: int, rng: np.random.Generator,
                   scale: float = 0.5) -> JetGroupElement:
    """A random element with well-conditioned alpha and small jet parts."""
    alpha = np.eye(m) + rng.normal(size=(m, m)) * scale
    while abs(np.linalg.det(alpha)) < 0.1:
        alpha = np.eye(m) + rng.normal(size=(m, m)) * scale
    theta = tuple(desc.random_algebra(rng) for _ in range(m))
    return JetGroupElement(group=desc, alpha=alpha, a=desc.random_group(rng), theta=theta)
