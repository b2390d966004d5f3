"""Pauli/Dirac matrix algebra and the unit-vector -> spinor quantization map.

Matrices are dense complex128 numpy arrays. The 4x4 Dirac matrices are
tensor products with the r-space factor first, basis order
(r_up s_up, r_up s_down, r_down s_up, r_down s_down).
"""
from __future__ import annotations

import numpy as np

from .kinematics import KinematicState, _unit

NORM_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class ContractError(ValueError):
    """Raised when a spinor that must be normalized is not."""


def _index(i: int) -> int:
    if i not in (1, 2, 3):
        raise IndexError(f"matrix index must be 1, 2 or 3, got {i!r}")
    return i - 1


def pauli(i: int) -> np.ndarray:
    return _PAULI[_index(i)].copy()


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product ``a (x) b``; ``a`` acts on r-space."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dirac_alpha(i: int) -> np.ndarray:
    """alpha_i = rho_1 (x) sigma_i, the velocity operator components."""
    return kron(_PAULI[0], _PAULI[_index(i)])


def dirac_beta() -> np.ndarray:
    """beta = rho_3 (x) I, the proper-time velocity operator."""
    return kron(_PAULI[2], I2)


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def is_hermitian(m: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def is_unitary(m: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)


def normalize(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return psi / np.linalg.norm(psi)


def _check_normalized(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    n2 = float(np.vdot(psi, psi).real)
    if abs(n2 - 1.0) > NORM_TOL:
        raise ContractError(f"spinor is not normalized: psi^dag psi = {n2!r}")
    return psi


def expectation(psi: np.ndarray, op: np.ndarray) -> complex:
    """<psi| op |psi> for a normalized spinor."""
    psi = _check_normalized(psi)
    return complex(np.vdot(psi, op @ psi))


def su2_rotation(axis, theta: float) -> np.ndarray:
    """exp(-i theta (n.sigma) / 2) in closed form."""
    n = _unit(axis, "axis")
    n_sigma = sum(n[j] * _PAULI[j] for j in range(3))
    return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * n_sigma


def bloch_vector(chi: np.ndarray) -> np.ndarray:
    """(<sigma_1>, <sigma_2>, <sigma_3>) of a normalized 2-spinor."""
    chi = _check_normalized(chi)
    return np.array([np.vdot(chi, p @ chi).real for p in _PAULI])


def bloch_to_spinor(u) -> np.ndarray:
    """Normalized 2-spinor whose Pauli expectations reproduce the unit vector u.

    Broadcasts over leading axes of ``u`` (shape (..., 3)). Global phase: the
    first non-zero component is real and positive.
    """
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u, axis=-1, keepdims=True)
    u1, u2, u3 = u[..., 0], u[..., 1], u[..., 2]
    upper = u3 >= 0
    # two algebraically equal forms; pick the one without cancellation
    with np.errstate(invalid="ignore", divide="ignore"):
        nu = np.sqrt(2.0 * (1.0 + u3))
        nl = np.sqrt(2.0 * (1.0 - u3))
        a_up, b_up = (1.0 + u3) / nu, (u1 + 1j * u2) / nu
        a_lo, b_lo = (u1 - 1j * u2) / nl, (1.0 - u3) / nl
    a = np.where(upper, a_up, a_lo)
    b = np.where(upper, b_up, b_lo)
    mag = np.abs(a)
    phase = np.exp(-1j * np.angle(a))
    return np.stack([mag.astype(complex), b * phase], axis=-1)


def quantize(state: KinematicState) -> np.ndarray:
    """Product 4-spinor chi(r) (x) chi(s) for a classical kinematic state.

    <beta> = cos phi and <alpha_i> = sin phi * s_i. Only expectation values
    are fixed by the classical state; entangled spinors with the same
    expectations exist but are not produced here.
    """
    return np.outer(bloch_to_spinor(state.r), bloch_to_spinor(state.s_vec)).ravel()


def dequantize(psi: np.ndarray) -> tuple[np.ndarray, float]:
    """Return (<alpha>, <beta>) of a normalized 4-spinor."""
    psi = _check_normalized(psi)
    alpha = np.einsum("i,kij,j->k", psi.conj(), _ALPHA, psi).real
    return alpha, float(np.vdot(psi, _BETA @ psi).real)


_ALPHA = np.stack([dirac_alpha(i) for i in (1, 2, 3)])
_BETA = dirac_beta()


def to_pairs(a: np.ndarray) -> list:
    """Nested lists of [re, im] pairs (row-major) for JSON dumps."""
    a = np.asarray(a, dtype=complex)
    if a.ndim == 0:
        return [float(a.real), float(a.imag)]
    return [to_pairs(row) for row in a]


def from_pairs(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]
