"""Reductive decomposition of gl(m, R) with respect to a metric signature.

For the flat inner product eta = diag(+1 x p, -1 x q) (pluses first), every
square matrix M splits uniquely into

    M = antisym + sym_traceless + c * I

where ``antisym`` is eta-antisymmetric (an so(p, q) element), ``sym_traceless``
is eta-symmetric with zero trace, and ``c = tr(M) / m``.  The decomposition is
Ad-invariant under SO(p, q), which is what makes the antisymmetric part usable
as a projection target for frame-bundle lift coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import InputError, PreconditionError


@dataclass(frozen=True)
class Signature:
    """Metric signature (p pluses, q minuses), pluses first."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise ValueError(f"invalid signature ({self.p}, {self.q})")

    @property
    def dim(self) -> int:
        return self.p + self.q

    def eta(self) -> np.ndarray:
        return eta_matrix(self)


@dataclass(frozen=True)
class ReductiveSplit:
    """The three components of a reductive decomposition of a matrix."""

    antisym: np.ndarray
    sym_traceless: np.ndarray
    trace_coeff: float

    def reconstruct(self) -> np.ndarray:
        m = self.antisym.shape[0]
        return self.antisym + self.sym_traceless + self.trace_coeff * np.eye(m)


def eta_matrix(sig: Signature) -> np.ndarray:
    """Flat metric diag(+1 x p, -1 x q)."""
    return np.diag(np.array([1.0] * sig.p + [-1.0] * sig.q))


def eta_adjoint(mat: np.ndarray, sig: Signature) -> np.ndarray:
    """Adjoint of ``mat`` with respect to eta: eta @ mat.T @ eta."""
    mat = np.asarray(mat, dtype=float)
    _check_square(mat, sig)
    eta = eta_matrix(sig)
    return eta @ mat.T @ eta


def decompose_gl(mat: np.ndarray, sig: Signature) -> ReductiveSplit:
    """Split ``mat`` into eta-antisymmetric + eta-symmetric-traceless + trace parts.

    The pieces sum back to ``mat`` exactly (up to roundoff) and each lies in
    its subspace by construction: the eta-adjoint is an involution, so the
    (anti)symmetrizations land where they should, and the symmetric part of a
    traceless matrix stays traceless because the eta-adjoint preserves traces.
    """
    mat = np.asarray(mat, dtype=float)
    _check_square(mat, sig)
    m = sig.dim
    c = float(np.trace(mat)) / m
    traceless = mat - c * np.eye(m)
    adj = eta_adjoint(traceless, sig)
    antisym = (traceless - adj) / 2.0
    sym_traceless = (traceless + adj) / 2.0
    return ReductiveSplit(antisym=antisym, sym_traceless=sym_traceless, trace_coeff=c)


def adjoint_action(o: np.ndarray, mat: np.ndarray) -> np.ndarray:
    """Conjugation o @ mat @ o^-1 (raises on singular ``o``)."""
    o = np.asarray(o, dtype=float)
    mat = np.asarray(mat, dtype=float)
    if abs(np.linalg.det(o)) < 1e-12:
        raise PreconditionError("adjoint action requires an invertible matrix")
    return o @ mat @ np.linalg.inv(o)


def random_so_element(sig: Signature, seed: int, scale: float = 1.0) -> np.ndarray:
    """Exponential of a seeded random eta-antisymmetric matrix.

    Lands in the identity component of SO(p, q); ``scale = 0`` forces the
    generator to zero and returns the identity.
    """
    rng = np.random.default_rng(seed)
    return so_exponential(random_so_algebra(sig, rng, scale))


def random_so_algebra(sig: Signature, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Seeded random eta-antisymmetric matrix (an so(p, q) element)."""
    m = sig.dim
    raw = scale * rng.uniform(-1.0, 1.0, size=(m, m))
    return (raw - eta_adjoint(raw, sig)) / 2.0


def so_exponential(algebra_element: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring Pade, accurate well below 1e-12)."""
    return expm(np.asarray(algebra_element, dtype=float))


def _check_square(mat: np.ndarray, sig: Signature) -> None:
    m = sig.dim
    if mat.shape != (m, m):
        raise InputError(
            f"expected a {m}x{m} matrix for signature ({sig.p}, {sig.q}), got shape {mat.shape}"
        )
