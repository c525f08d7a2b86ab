"""Tests for gamma-matrix construction and the spin algebra map."""

import numpy as np
import pytest

from kosmann.errors import PreconditionError
from kosmann.clifford import apply_clifford, gamma_matrices, spin_algebra_map
from kosmann.liealg import Signature, eta_matrix

ALL_SIGNATURES = [
    Signature(p, m - p) for m in range(1, 6) for p in range(m + 1)
]


@pytest.mark.parametrize("sig", ALL_SIGNATURES, ids=str)
def test_clifford_relations(sig):
    rep = gamma_matrices(sig)
    eta = eta_matrix(sig)
    n = rep.n_spinor
    assert n == 2 ** (sig.dim // 2)
    for a in range(sig.dim):
        for b in range(sig.dim):
            anti = rep.gammas[a] @ rep.gammas[b] + rep.gammas[b] @ rep.gammas[a]
            assert np.abs(anti - 2.0 * eta[a, b] * np.eye(n)).max() < 1e-14


def test_euclidean_gammas_are_hermitian():
    rep = gamma_matrices(Signature(3, 0))
    for g in rep.gammas:
        assert np.abs(g - g.conj().T).max() < 1e-14


def test_timelike_gammas_square_to_plus_one_spacelike_to_minus_one():
    rep = gamma_matrices(Signature(1, 3))
    eye = np.eye(rep.n_spinor)
    assert np.abs(rep.gammas[0] @ rep.gammas[0] - eye).max() < 1e-14
    for a in range(1, 4):
        assert np.abs(rep.gammas[a] @ rep.gammas[a] + eye).max() < 1e-14


def test_gamma_matrices_cached_and_read_only():
    rep1 = gamma_matrices(Signature(1, 1))
    rep2 = gamma_matrices(Signature(1, 1))
    assert rep1 is rep2
    with pytest.raises(ValueError):
        rep1.gammas[0][0, 0] = 5.0


def test_spin_algebra_map_worked_example():
    rep = gamma_matrices(Signature(2, 0))
    a = np.array([[0.0, -1.0], [1.0, 0.0]])
    expected = -0.5 * rep.gammas[0] @ rep.gammas[1]
    assert np.abs(spin_algebra_map(rep, a) - expected).max() < 1e-14


def test_spin_algebra_map_zero():
    rep = gamma_matrices(Signature(1, 2))
    assert np.abs(spin_algebra_map(rep, np.zeros((3, 3)))).max() == 0.0


def test_spin_algebra_map_rejects_non_antisymmetric():
    rep = gamma_matrices(Signature(2, 0))
    with pytest.raises(PreconditionError):
        spin_algebra_map(rep, np.array([[0.0, 1.0], [1.0, 0.0]]))


@pytest.mark.parametrize("sig", [Signature(2, 0), Signature(1, 1), Signature(1, 3), Signature(2, 3)], ids=str)
def test_spin_algebra_map_is_homomorphism(sig):
    # commutators of spin images match the image of the so(p,q) bracket
    rng = np.random.default_rng(5)
    rep = gamma_matrices(sig)
    eta = eta_matrix(sig)
    for _ in range(20):
        x = rng.normal(size=(sig.dim, sig.dim))
        y = rng.normal(size=(sig.dim, sig.dim))
        a = x - x.T
        b = y - y.T
        # mixed representatives of the lowered matrices
        ma, mb = eta @ a, eta @ b
        bracket_lowered = eta @ (ma @ mb - mb @ ma)
        sa, sb = spin_algebra_map(rep, a), spin_algebra_map(rep, b)
        assert np.abs(sa @ sb - sb @ sa - spin_algebra_map(rep, bracket_lowered)).max() < 1e-12


def test_spin_algebra_map_intertwines_vector_action():
    # [sigma(eta m), v_a gamma^a] = (m v)_a gamma^a with lowered components
    sig = Signature(1, 3)
    rep = gamma_matrices(sig)
    eta = eta_matrix(sig)
    rng = np.random.default_rng(9)
    x = rng.normal(size=(4, 4))
    m = x - eta @ x.T @ eta
    s = spin_algebra_map(rep, eta @ m)
    for c in range(4):
        v = np.zeros(4)
        v[c] = 1.0
        vg = sum((eta @ v)[a] * rep.gammas[a] for a in range(4))
        mvg = sum((eta @ m @ v)[a] * rep.gammas[a] for a in range(4))
        assert np.abs(s @ vg - vg @ s - mvg).max() < 1e-12


def test_apply_clifford():
    rep = gamma_matrices(Signature(1, 1))
    psi = np.array([1.0 + 2.0j, -0.5j])
    assert np.abs(apply_clifford(np.eye(2), psi) - psi).max() == 0.0
    out = apply_clifford(rep.gammas[0], psi)
    assert np.abs(out - rep.gammas[0] @ psi).max() == 0.0


def test_pair_products_table():
    rep = gamma_matrices(Signature(1, 2))
    gg = rep.pair_products()
    for a in range(3):
        for b in range(3):
            assert np.abs(gg[a, b] - rep.gammas[a] @ rep.gammas[b]).max() == 0.0
