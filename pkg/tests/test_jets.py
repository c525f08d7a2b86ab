"""Tests for the first-prolongation jet group and its actions."""

import numpy as np
import pytest

from kosmann.errors import InputError, PreconditionError
from kosmann.jets import (
    STANDARD_GROUPS,
    JetGroupElement,
    action_tau,
    action_v,
    action_vertical,
    gl_group,
    multiply_oracle,
    random_element,
    representative,
    sl_group,
    so_group,
    w11_identity,
    w11_inverse,
    w11_multiply,
)
from kosmann.liealg import Signature

GROUP_NAMES = sorted(STANDARD_GROUPS)


def elements(name, m, count, seed):
    rng = np.random.default_rng(seed)
    desc = STANDARD_GROUPS[name]
    return [random_element(desc, m, rng) for _ in range(count)]


def element_close(g, h, tol=1e-10):
    assert np.abs(g.alpha - h.alpha).max() < tol
    assert np.abs(g.a - h.a).max() < tol
    for t1, t2 in zip(g.theta, h.theta):
        assert np.abs(t1 - t2).max() < tol


# ---------------------------------------------------------------------------
# Group descriptors
# ---------------------------------------------------------------------------


def test_standard_group_names():
    assert GROUP_NAMES == ["GL(2)", "SL(2)", "SO(1,1)", "SO(2)"]


def test_random_samples_pass_membership():
    rng = np.random.default_rng(3)
    for desc in STANDARD_GROUPS.values():
        for _ in range(5):
            desc.check_group(desc.random_group(rng))
            desc.check_algebra(desc.random_algebra(rng))


def test_so_group_rejects_wrong_determinant():
    desc = so_group(Signature(1, 1))
    # eta-orthogonal but det = -1: not in the identity component
    assert desc.group_residual(np.array([[0.0, 1.0], [1.0, 0.0]])) == np.inf
    with pytest.raises(PreconditionError):
        desc.check_group(np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_so_group_rejects_non_orthogonal():
    desc = so_group(Signature(2, 0))
    bad = np.array([[1.0, 0.5], [0.0, 1.0]])
    with pytest.raises(PreconditionError):
        desc.check_group(bad / np.sqrt(np.linalg.det(bad)))


def test_sl_group_membership():
    desc = sl_group(2)
    desc.check_group(np.array([[2.0, 0.0], [0.0, 0.5]]))
    with pytest.raises(PreconditionError):
        desc.check_group(np.array([[2.0, 0.0], [0.0, 1.0]]))
    with pytest.raises(PreconditionError):
        desc.check_algebra(np.eye(2))


def test_gl_group_accepts_any_invertible():
    desc = gl_group(2)
    desc.check_group(np.array([[3.0, 1.0], [0.0, -2.0]]))
    with pytest.raises(PreconditionError):
        desc.check_group(np.array([[1.0, 2.0], [2.0, 4.0]]))


# ---------------------------------------------------------------------------
# Element validation
# ---------------------------------------------------------------------------


def test_element_rejects_singular_alpha():
    desc = gl_group(2)
    with pytest.raises(PreconditionError):
        JetGroupElement(
            group=desc, alpha=np.zeros((2, 2)), a=np.eye(2), theta=(np.zeros((2, 2)),) * 2
        )


def test_element_rejects_wrong_shapes():
    desc = gl_group(2)
    with pytest.raises(InputError):
        JetGroupElement(
            group=desc, alpha=np.eye(3)[:2], a=np.eye(2), theta=(np.zeros((2, 2)),) * 2
        )
    with pytest.raises(InputError):
        JetGroupElement(
            group=desc, alpha=np.eye(2), a=np.eye(3), theta=(np.zeros((2, 2)),) * 2
        )
    with pytest.raises(InputError):
        JetGroupElement(
            group=desc, alpha=np.eye(2), a=np.eye(2), theta=(np.zeros((3, 3)),) * 2
        )


def test_element_rejects_group_part_outside_group():
    desc = so_group(Signature(2, 0))
    with pytest.raises(PreconditionError):
        JetGroupElement(
            group=desc,
            alpha=np.eye(2),
            a=np.array([[1.0, 0.3], [0.0, 1.0]]),
            theta=(np.zeros((2, 2)),) * 2,
        )


def test_element_rejects_theta_outside_algebra():
    desc = so_group(Signature(2, 0))
    with pytest.raises(PreconditionError):
        JetGroupElement(
            group=desc, alpha=np.eye(2), a=np.eye(2), theta=(np.eye(2), np.zeros((2, 2)))
        )


# ---------------------------------------------------------------------------
# Group axioms
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_identity_is_neutral(name):
    e = w11_identity(2, STANDARD_GROUPS[name])
    for g in elements(name, 2, 4, seed=11):
        element_close(w11_multiply(e, g), g)
        element_close(w11_multiply(g, e), g)


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_associativity(name):
    for g1, g2, g3 in zip(*(elements(name, 2, 4, seed=s) for s in (21, 22, 23))):
        lhs = w11_multiply(w11_multiply(g1, g2), g3)
        rhs = w11_multiply(g1, w11_multiply(g2, g3))
        element_close(lhs, rhs, tol=1e-9)


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_inverse_cancels(name):
    e = w11_identity(2, STANDARD_GROUPS[name])
    for g in elements(name, 2, 4, seed=31):
        element_close(w11_multiply(g, w11_inverse(g)), e, tol=1e-9)
        element_close(w11_multiply(w11_inverse(g), g), e, tol=1e-9)


def test_multiply_rejects_mismatched_groups():
    g1 = elements("GL(2)", 2, 1, seed=1)[0]
    g2 = elements("SO(2)", 2, 1, seed=1)[0]
    with pytest.raises(InputError):
        w11_multiply(g1, g2)


def test_multiply_rejects_mismatched_base_dimension():
    desc = STANDARD_GROUPS["SO(2)"]
    rng = np.random.default_rng(5)
    g1 = random_element(desc, 2, rng)
    g2 = random_element(desc, 3, rng)
    with pytest.raises(InputError):
        w11_multiply(g1, g2)


# ---------------------------------------------------------------------------
# Closed form against the finite-difference oracle
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_multiplication_matches_oracle(name):
    for g1, g2 in zip(elements(name, 2, 5, seed=41), elements(name, 2, 5, seed=42)):
        prod = w11_multiply(g1, g2)
        alpha, a, theta = multiply_oracle(g1, g2)
        assert np.abs(prod.alpha - alpha).max() < 1e-12
        assert np.abs(prod.a - a).max() < 1e-12
        for t_closed, t_fd in zip(prod.theta, theta):
            assert np.abs(t_closed - t_fd).max() < 1e-7


def test_representative_reproduces_jet_coordinates():
    g = elements("SL(2)", 2, 1, seed=7)[0]
    rep = representative(g)
    assert np.abs(rep(np.zeros(2)) - g.a).max() < 1e-14
    h = 1e-6
    a0_inv = np.linalg.inv(g.a)
    for l in range(2):
        step = np.zeros(2)
        step[l] = h
        fd = (a0_inv @ rep(step) - a0_inv @ rep(-step)) / (2 * h)
        assert np.abs(fd - g.theta[l]).max() < 1e-8


# ---------------------------------------------------------------------------
# Actions
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_action_v_is_compatible_with_multiplication(name):
    desc = STANDARD_GROUPS[name]
    rng = np.random.default_rng(51)
    for g1, g2 in zip(elements(name, 2, 4, seed=52), elements(name, 2, 4, seed=53)):
        nu = rng.normal(size=2)
        v = desc.random_algebra(rng)
        nu_two, v_two = action_v(g2, nu, v)
        nu_seq, v_seq = action_v(g1, nu_two, v_two)
        nu_prod, v_prod = action_v(w11_multiply(g1, g2), nu, v)
        assert np.abs(nu_seq - nu_prod).max() < 1e-10
        assert np.abs(v_seq - v_prod).max() < 1e-10


def test_identity_acts_trivially():
    desc = STANDARD_GROUPS["SO(1,1)"]
    e = w11_identity(2, desc)
    rng = np.random.default_rng(61)
    nu = rng.normal(size=2)
    v = desc.random_algebra(rng)
    nu_out, v_out = action_v(e, nu, v)
    assert np.abs(nu_out - nu).max() == 0.0
    assert np.abs(v_out - v).max() == 0.0
    assert np.abs(action_vertical(e, v) - v).max() == 0.0


def test_action_vertical_is_zero_nu_slice():
    desc = STANDARD_GROUPS["SO(2)"]
    rng = np.random.default_rng(62)
    g = random_element(desc, 2, rng)
    v = desc.random_algebra(rng)
    _, v_out = action_v(g, np.zeros(2), v)
    assert np.abs(action_vertical(g, v) - v_out).max() < 1e-14


def test_action_v_rejects_bad_shapes():
    g = elements("SO(2)", 2, 1, seed=63)[0]
    with pytest.raises(InputError):
        action_v(g, np.zeros(3), np.zeros((2, 2)))
    with pytest.raises(InputError):
        action_v(g, np.zeros(2), np.zeros((3, 3)))


def test_action_v_rejects_non_algebra_argument():
    g = elements("SO(2)", 2, 1, seed=64)[0]
    with pytest.raises(PreconditionError):
        action_v(g, np.zeros(2), np.eye(2))


def test_action_tau_requires_kernel_element():
    g = elements("SO(2)", 2, 1, seed=65)[0]
    if np.abs(g.a - np.eye(2)).max() < 1e-10:  # pragma: no cover
        pytest.skip("sampled element happens to be in the kernel")
    with pytest.raises(PreconditionError):
        action_tau(g, np.zeros(2), np.zeros((2, 2)))


def test_action_tau_on_kernel_element():
    desc = STANDARD_GROUPS["SO(2)"]
    rng = np.random.default_rng(66)
    sample = random_element(desc, 2, rng)
    kernel = JetGroupElement(group=desc, alpha=sample.alpha, a=np.eye(2), theta=sample.theta)
    nu = rng.normal(size=2)
    v = desc.random_algebra(rng)
    nu_out, v_out = action_tau(kernel, nu, v)
    assert np.abs(nu_out - kernel.alpha @ nu).max() < 1e-14
    expected = v + kernel.theta[0] * nu[0] + kernel.theta[1] * nu[1]
    assert np.abs(v_out - expected).max() < 1e-14


def test_action_tau_compatible_on_kernel_products():
    desc = STANDARD_GROUPS["SL(2)"]
    rng = np.random.default_rng(67)

    def kernel_element():
        sample = random_element(desc, 2, rng)
        return JetGroupElement(group=desc, alpha=sample.alpha, a=np.eye(2), theta=sample.theta)

    g1, g2 = kernel_element(), kernel_element()
    nu = rng.normal(size=2)
    v = desc.random_algebra(rng)
    nu_two, v_two = action_tau(g2, nu, v)
    nu_seq, v_seq = action_tau(g1, nu_two, v_two)
    nu_prod, v_prod = action_tau(w11_multiply(g1, g2), nu, v)
    assert np.abs(nu_seq - nu_prod).max() < 1e-10
    assert np.abs(v_seq - v_prod).max() < 1e-10


def test_base_dimension_three():
    desc = STANDARD_GROUPS["SO(2)"]
    rng = np.random.default_rng(71)
    g1, g2 = random_element(desc, 3, rng), random_element(desc, 3, rng)
    e = w11_identity(3, desc)
    element_close(w11_multiply(g1, w11_inverse(g1)), e, tol=1e-9)
    alpha, a, theta = multiply_oracle(g1, g2)
    prod = w11_multiply(g1, g2)
    assert np.abs(prod.alpha - alpha).max() < 1e-12
    for t_closed, t_fd in zip(prod.theta, theta):
        assert np.abs(t_closed - t_fd).max() < 1e-7
