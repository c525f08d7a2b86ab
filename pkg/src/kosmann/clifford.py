"""Gamma-matrix representations of Clifford algebras Cl(p, q).

The construction is the usual tensor-product ladder: Jordan-Wigner style
Euclidean gammas built from Pauli matrices, with the q timelike ones
multiplied by i afterwards so that (gamma^a)^2 = eta^{aa} * I with eta in the
pluses-first convention.  Spinor space has dimension N = 2^floor(m/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import PreconditionError
from .liealg import Signature

_SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@dataclass(frozen=True)
class GammaRep:
    """A concrete gamma-matrix representation for one signature."""

    signature: Signature
    gammas: tuple[np.ndarray, ...]

    @property
    def n_spinor(self) -> int:
        return self.gammas[0].shape[0]

    def pair_products(self) -> np.ndarray:
        """Cached table gg[a, b] = gamma^a @ gamma^b."""
        return _pair_products(self.signature.p, self.signature.q)


def _euclidean_gammas(m: int) -> list[np.ndarray]:
    """Pairwise-anticommuting Hermitian matrices squaring to the identity."""
    if m == 1:
        return [np.array([[1.0]], dtype=complex)]
    k = m // 2
    gammas = []
    for j in range(k):
        for seed in (_SIGMA1, _SIGMA2):
            factors = [_SIGMA3] * j + [seed] + [np.eye(2, dtype=complex)] * (k - j - 1)
            mat = factors[0]
            for f in factors[1:]:
                mat = np.kron(mat, f)
            gammas.append(mat)
    if m % 2 == 1:
        mat = _SIGMA3
        for _ in range(k - 1):
            mat = np.kron(mat, _SIGMA3)
        gammas.append(mat)
    return gammas


@lru_cache(maxsize=None)
def _gamma_matrices(p: int, q: int) -> GammaRep:
    sig = Signature(p, q)
    gammas = _euclidean_gammas(sig.dim)
    # timelike directions come last in the pluses-first convention
    for a in range(p, p + q):
        gammas[a] = 1.0j * gammas[a]
    for g in gammas:
        g.setflags(write=False)
    return GammaRep(signature=sig, gammas=tuple(gammas))


def gamma_matrices(sig: Signature) -> GammaRep:
    """Gamma matrices for Cl(p, q) with gamma^a gamma^b + gamma^b gamma^a = 2 eta^{ab}."""
    return _gamma_matrices(sig.p, sig.q)


@lru_cache(maxsize=None)
def _pair_products(p: int, q: int) -> np.ndarray:
    rep = _gamma_matrices(p, q)
    m, n = rep.signature.dim, rep.n_spinor
    table = np.empty((m, m, n, n), dtype=complex)
    for a in range(m):
        for b in range(m):
            table[a, b] = rep.gammas[a] @ rep.gammas[b]
    table.setflags(write=False)
    return table


def spin_algebra_map(rep: GammaRep, a_lower: np.ndarray) -> np.ndarray:
    """Spin-algebra representative 1/4 sum_ab A_ab gamma^a gamma^b.

    ``a_lower`` carries both indices down and must be antisymmetric (checked
    to 1e-10); mixed-index so(p, q) elements are lowered by the callers.
    The map is a Lie algebra homomorphism once the eta contractions hidden in
    the commutator of lowered matrices are accounted for.
    """
    a_lower = np.asarray(a_lower, dtype=float)
    m = rep.signature.dim
    if a_lower.shape != (m, m):
        raise PreconditionError(f"expected a {m}x{m} coefficient matrix, got {a_lower.shape}")
    skew = np.max(np.abs(a_lower + a_lower.T))
    if skew > 1e-10:
        raise PreconditionError(
            f"coefficient matrix is not antisymmetric (max |A + A^T| = {skew:.3e})"
        )
    return 0.25 * np.einsum("ab,abij->ij", a_lower, rep.pair_products())


def apply_clifford(operator: np.ndarray, spinor: np.ndarray) -> np.ndarray:
    """Apply an N x N spin-space operator to a spinor (plain matrix-vector)."""
    return np.asarray(operator) @ np.asarray(spinor)
