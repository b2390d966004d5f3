import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tauspinor import kinematics as kin
from tauspinor import spinor as sp
from tauspinor.io import dump_matrix, load_matrix

from .test_kinematics import angles, states, unit_vectors


@st.composite
def spinors(draw, dim=2):
    parts = [draw(st.floats(-1, 1)) for _ in range(2 * dim)]
    z = np.array(parts[:dim]) + 1j * np.array(parts[dim:])
    n = np.linalg.norm(z)
    if n < 1e-3:
        z = np.eye(dim, dtype=complex)[0]
        n = 1.0
    return z / n


def test_pauli_matrices():
    np.testing.assert_array_equal(sp.pauli(1), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(sp.pauli(2), [[0, -1j], [1j, 0]])
    np.testing.assert_array_equal(sp.pauli(3), [[1, 0], [0, -1]])
    for i in (1, 2, 3):
        p = sp.pauli(i)
        assert sp.is_hermitian(p) and sp.is_unitary(p) and np.trace(p) == 0


@pytest.mark.parametrize("i", [0, 4, -1])
def test_pauli_index_range(i):
    with pytest.raises(IndexError):
        sp.pauli(i)
    with pytest.raises(IndexError):
        sp.dirac_alpha(i)


def test_kron_examples():
    np.testing.assert_array_equal(sp.kron(sp.I2, sp.I2), sp.I4)
    np.testing.assert_array_equal(sp.kron(sp.pauli(3), sp.I2), np.diag([1, 1, -1, -1]))
    np.testing.assert_array_equal(sp.kron(sp.pauli(1), sp.pauli(1)), sp.dirac_alpha(1))


def test_standard_representation():
    # rho_1 (x) sigma_i has sigma_i in the off-diagonal blocks
    for i in (1, 2, 3):
        a = sp.dirac_alpha(i)
        np.testing.assert_array_equal(a[:2, 2:], sp.pauli(i))
        np.testing.assert_array_equal(a[2:, :2], sp.pauli(i))
        np.testing.assert_array_equal(a[:2, :2], 0)
    np.testing.assert_array_equal(sp.dirac_beta(), np.diag([1, 1, -1, -1]))


def test_dirac_algebra_exact():
    a = [sp.dirac_alpha(i) for i in (1, 2, 3)]
    b = sp.dirac_beta()
    for i in range(3):
        np.testing.assert_array_equal(sp.anticommutator(a[i], b), 0)
        assert sp.is_hermitian(a[i], tol=0)
        for j in range(3):
            np.testing.assert_array_equal(sp.anticommutator(a[i], a[j]), 2 * (i == j) * sp.I4)
    np.testing.assert_array_equal(b @ b, sp.I4)


def test_commutators():
    rng = np.random.default_rng(1)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    np.testing.assert_allclose(sp.anticommutator(sp.I4, m), 2 * m)
    np.testing.assert_array_equal(sp.commutator(m, m), 0)


@pytest.mark.parametrize("psi, op, expected", [
    ((1, 0, 0, 0), sp.dirac_beta(), 1.0),
    ((1, 0, 0, 0), sp.dirac_alpha(1), 0.0),
    (np.array([1, 0, 1, 0]) / np.sqrt(2), sp.dirac_alpha(3), 1.0),
])
def test_expectation(psi, op, expected):
    val = sp.expectation(np.asarray(psi, complex), op)
    assert val.real == pytest.approx(expected, abs=1e-15)
    assert abs(val.imag) < 1e-12


def test_expectation_requires_normalized():
    with pytest.raises(sp.ContractError):
        sp.expectation(np.array([1, 1, 0, 0], complex), sp.dirac_beta())
    with pytest.raises(sp.ContractError):
        sp.dequantize(np.array([2, 0, 0, 0], complex))


def test_su2_rotation_examples():
    np.testing.assert_allclose(sp.su2_rotation((0.6, 0, 0.8), 0.0), sp.I2, atol=1e-15)
    np.testing.assert_allclose(sp.su2_rotation((0, 0, 1), 2 * np.pi), -sp.I2, atol=1e-15)
    expected = np.diag([np.exp(-1j * np.pi / 4), np.exp(1j * np.pi / 4)])
    np.testing.assert_allclose(sp.su2_rotation((0, 0, 1), np.pi / 2), expected, atol=1e-15)


@pytest.mark.parametrize("u, chi", [
    ((0, 0, 1), (1, 0)),
    ((0, 0, -1), (0, 1)),
    ((1, 0, 0), (1 / np.sqrt(2), 1 / np.sqrt(2))),
])
def test_bloch_to_spinor_examples(u, chi):
    out = sp.bloch_to_spinor(u)
    np.testing.assert_allclose(out, chi, atol=1e-15)
    np.testing.assert_allclose(sp.bloch_vector(out), u, atol=1e-15)


@given(unit_vectors())
def test_bloch_to_spinor_properties(u):
    chi = sp.bloch_to_spinor(u)
    assert abs(np.vdot(chi, chi) - 1) < 1e-12
    np.testing.assert_allclose(sp.bloch_vector(chi), u, atol=1e-12)
    first = chi[0] if abs(chi[0]) > 0 else chi[1]
    assert first.imag == 0 and first.real >= 0


def test_bloch_to_spinor_broadcasts():
    us = np.array([[0, 0, 1], [0, 0, -1], [1, 0, 0], [0, -1, 0]], float)
    many = sp.bloch_to_spinor(us)
    for u, chi in zip(us, many):
        np.testing.assert_allclose(chi, sp.bloch_to_spinor(u), atol=1e-15)


@pytest.mark.parametrize("phi, s, alpha, beta", [
    (0.0, (0, 0, 1), (0, 0, 0), 1.0),
    (np.arcsin(0.6), (0, 0, 1), (0, 0, 0.6), 0.8),
    (np.pi, (0, 0, 1), (0, 0, 0), -1.0),
])
def test_quantize_examples(phi, s, alpha, beta):
    psi = sp.quantize(kin.KinematicState(phi, s))
    a, b = sp.dequantize(psi)
    np.testing.assert_allclose(a, alpha, atol=1e-15)
    assert b == pytest.approx(beta, abs=1e-15)


def test_quantize_rest_particle_is_first_basis_vector():
    np.testing.assert_array_equal(sp.quantize(kin.KinematicState(0.0)), [1, 0, 0, 0])


def test_dequantize_examples():
    a, b = sp.dequantize(sp.quantize(kin.KinematicState(np.arcsin(0.6), (1, 0, 0))))
    np.testing.assert_allclose(a, (0.6, 0, 0), atol=1e-15)
    assert b == pytest.approx(0.8)
    a, b = sp.dequantize(np.array([1, 0, 1, 0]) / np.sqrt(2))
    np.testing.assert_allclose(a, (0, 0, 1), atol=1e-15)
    assert b == pytest.approx(0.0, abs=1e-15)


def test_matrix_json_round_trip():
    a2 = sp.dirac_alpha(2)
    text = dump_matrix(a2)
    assert json.loads(text)[0][3] == [0.0, -1.0]
    np.testing.assert_array_equal(load_matrix(text), a2)
    np.testing.assert_array_equal(sp.from_pairs(sp.to_pairs([1j, 2])), [1j, 2])


# ---------------------------------------------------------------- properties

@given(spinors())
def test_pauli_expectations_form_unit_vector(chi):
    assert abs(np.sum(sp.bloch_vector(chi) ** 2) - 1) < 1e-12


@given(spinors(), unit_vectors(), angles)
def test_rotation_covariance(chi, axis, theta):
    lhs = sp.bloch_vector(sp.su2_rotation(axis, theta) @ chi)
    rhs = kin.rotation_matrix(axis, theta) @ sp.bloch_vector(chi)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


@given(unit_vectors(), angles, angles)
def test_su2_group_property(axis, t1, t2):
    prod = sp.su2_rotation(axis, t1) @ sp.su2_rotation(axis, t2)
    np.testing.assert_allclose(prod, sp.su2_rotation(axis, t1 + t2), atol=1e-12)
    assert sp.is_unitary(prod)


@given(states())
def test_quantize_reproduces_classical_velocities(state):
    psi = sp.quantize(state)
    alpha, beta = sp.dequantize(psi)
    v, rate = kin.velocity_from_state(state)
    assert abs(beta - rate) < 1e-12
    np.testing.assert_allclose(alpha, v, atol=1e-12)
    assert abs(beta**2 + alpha @ alpha - 1) < 1e-12


@given(spinors(dim=4))
def test_expectation_bound_for_any_spinor(psi):
    alpha, beta = sp.dequantize(psi)
    assert beta**2 + alpha @ alpha <= 1 + 1e-12


def test_entangled_spinor_is_strictly_inside_bound():
    # <beta> = -1/3, <alpha> = (2/3, 0, 0) by hand
    psi = np.array([1, 0, 1j, 1]) / np.sqrt(3)
    alpha, beta = sp.dequantize(psi)
    assert beta == pytest.approx(-1 / 3)
    np.testing.assert_allclose(alpha, (2 / 3, 0, 0), atol=1e-15)
    assert beta**2 + alpha @ alpha == pytest.approx(5 / 9)


@given(states())
def test_quantize_agrees_with_classify(state):
    try:
        matter, hel = kin.classify(state)
    except kin.BoundaryError:
        return
    alpha, beta = sp.dequantize(sp.quantize(state))
    assert np.sign(beta) == matter
    assert np.sign(alpha @ state.s_vec) == hel
