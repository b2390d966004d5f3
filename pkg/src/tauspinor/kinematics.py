"""Classical relativistic kinematics written as rotations of two unit vectors.

A motion state is the pair (r, s): r = (sin phi, 0, cos phi) lives in the
kinematic plane and carries the speed and the proper-time velocity, s is a
3D unit vector carrying the direction of motion. Units: c = 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

ArrayLike = Union[Sequence[float], np.ndarray]

UNIT_TOL = 1e-12
REST_AXIS = (0.0, 0.0, 1.0)


class DomainError(ValueError):
    """Input outside the physical domain (e.g. |v| >= 1)."""


class BoundaryError(ValueError):
    """State sits on a classification boundary (light-like or at rest)."""


def _vec3(v: ArrayLike, name: str = "vector") -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must have 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite components")
    return arr


def _unit(v: ArrayLike, name: str = "unit vector") -> np.ndarray:
    arr = _vec3(v, name)
    n = np.linalg.norm(arr)
    if abs(n - 1.0) > 1e-9:
        raise ValueError(f"{name} must have unit length, |{name}| = {n!r}")
    # leave rounding-level deviations alone so normalization is idempotent
    return arr if abs(n - 1.0) <= 4 * np.finfo(float).eps else arr / n


def _sign(value: int, name: str) -> int:
    if value not in (1, -1):
        raise ValueError(f"{name} must be +1 or -1, got {value!r}")
    return int(value)


def wrap_angle(phi: float) -> float:
    """Map an angle into (-pi, pi]."""
    if -np.pi < phi <= np.pi:
        return float(phi)
    wrapped = float(np.remainder(phi + np.pi, 2.0 * np.pi) - np.pi)
    if wrapped == -np.pi:
        return float(np.pi)
    return wrapped


@dataclass(frozen=True)
class KinematicState:
    """Kinematic-plane angle ``phi`` plus direction unit vector ``s``.

    Storing the angle instead of r's components keeps |r| = 1 and r2 = 0
    exact under any number of rotations.
    """

    phi: float
    s: tuple[float, float, float] = REST_AXIS

    def __post_init__(self) -> None:
        s = _unit(self.s, "s")
        object.__setattr__(self, "phi", wrap_angle(float(self.phi)))
        object.__setattr__(self, "s", tuple(float(c) for c in s))

    @property
    def r(self) -> np.ndarray:
        return np.array([np.sin(self.phi), 0.0, np.cos(self.phi)])

    @property
    def s_vec(self) -> np.ndarray:
        return np.array(self.s)

    @property
    def tau_dot(self) -> float:
        return float(np.cos(self.phi))

    @property
    def speed(self) -> float:
        return float(abs(np.sin(self.phi)))


@dataclass(frozen=True)
class Timeline:
    t: np.ndarray
    tau: np.ndarray
    x: np.ndarray  # shape (n, 3)

    def __post_init__(self) -> None:
        if not (len(self.t) == len(self.tau) == len(self.x)):
            raise ValueError("timeline arrays must have equal length")
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("timeline times must be strictly increasing")


def gamma(v: ArrayLike) -> float:
    """Lorentz factor (1 - |v|^2)^(-1/2); raises DomainError for |v| >= 1."""
    v = _vec3(v, "v")
    v2 = float(v @ v)
    if v2 >= 1.0:
        raise DomainError(f"speed |v| = {np.sqrt(v2)!r} is not subluminal")
    return 1.0 / np.sqrt(1.0 - v2)


def proper_time_rate(v: ArrayLike, branch: int = 1) -> float:
    """d tau / dt = branch / gamma; branch -1 is the antiparticle sector."""
    return _sign(branch, "branch") / gamma(v)


def state_from_velocity(v: ArrayLike, branch: int = 1, helicity: int = 1) -> KinematicState:
    """Build the (phi, s) state describing velocity ``v``.

    Every velocity has two representations: helicity +1 uses s = v/|v| and
    sin phi = |v|, helicity -1 uses s = -v/|v| and sin phi = -|v|. The sign
    of cos phi is the matter branch. At rest s is set to helicity * z-hat.
    """
    v = _vec3(v, "v")
    branch = _sign(branch, "branch")
    helicity = _sign(helicity, "helicity")
    rate = proper_time_rate(v, branch)
    speed = float(np.linalg.norm(v))
    if speed == 0.0:
        return KinematicState(0.0 if branch > 0 else np.pi, (0.0, 0.0, float(helicity)))
    phi = np.arctan2(helicity * speed, rate)
    return KinematicState(phi, tuple(helicity * v / speed))


def velocity_from_state(state: KinematicState) -> tuple[np.ndarray, float]:
    """Return (dx/dt, dtau/dt) = (sin phi * s, cos phi)."""
    return np.sin(state.phi) * state.s_vec, float(np.cos(state.phi))


def rotate_r(state: KinematicState, dphi: float) -> KinematicState:
    """Rotate r about the r2 axis; s is untouched."""
    return KinematicState(state.phi + dphi, state.s)


def rotation_matrix(axis: ArrayLike, theta: float) -> np.ndarray:
    """3x3 rotation by ``theta`` about ``axis`` (Rodrigues formula)."""
    n = _unit(axis, "axis")
    kx = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    return np.eye(3) + np.sin(theta) * kx + (1.0 - np.cos(theta)) * (kx @ kx)


def rotate_s(state: KinematicState, axis: ArrayLike, theta: float) -> KinematicState:
    s = rotation_matrix(axis, theta) @ state.s_vec
    return KinematicState(state.phi, tuple(s / np.linalg.norm(s)))


def classify(state: KinematicState) -> tuple[int, int]:
    """Return (matter sign, helicity sign) for a state.

    Quadrants of the kinematic plane: (+,+) spin-up particle, (+,-) spin-down
    particle, (-,+) spin-up antiparticle, (-,-) spin-down antiparticle.
    """
    c, s = np.cos(state.phi), np.sin(state.phi)
    if abs(c) < UNIT_TOL:
        raise BoundaryError("light-like state: proper-time velocity vanishes")
    if abs(s) < UNIT_TOL:
        raise BoundaryError("at rest, helicity undefined")
    return (1 if c > 0 else -1), (1 if s > 0 else -1)


SPECIES = {
    (1, 1): "spin-up particle",
    (1, -1): "spin-down particle",
    (-1, 1): "spin-up antiparticle",
    (-1, -1): "spin-down antiparticle",
}


def helicity_classical(s: ArrayLike, p: ArrayLike) -> float:
    s = _unit(s, "s")
    p = _vec3(p, "p")
    pn = np.linalg.norm(p)
    if pn == 0.0:
        raise DomainError("helicity is undefined for zero momentum")
    return float(np.clip(s @ p / pn, -1.0, 1.0))


def classical_energy(p: ArrayLike, m: float, branch: int = 1) -> float:
    """Breit form E = v.p + tau_dot * m on shell.

    The on-shell velocity and proper-time rate are assembled as v = p/E0 and
    tau_dot = branch * m / E0 with E0 = sqrt(p^2 + m^2), so branch +1 gives E0
    and branch -1 gives (p^2 - m^2) / E0.
    """
    p = _vec3(p, "p")
    branch = _sign(branch, "branch")
    if m < 0:
        raise DomainError("mass must be non-negative")
    e0 = float(np.sqrt(p @ p + m * m))
    if e0 == 0.0:
        raise DomainError("p = 0 and m = 0 has no on-shell velocity")
    v = p / e0
    tau_dot = branch * m / e0
    return float(v @ p + tau_dot * m)


def integrate_timeline(
    v_of_t: Union[Callable[[float], ArrayLike], ArrayLike],
    t_grid: ArrayLike,
    branch: int = 1,
    x0: ArrayLike = (0.0, 0.0, 0.0),
    tau0: float = 0.0,
) -> Timeline:
    """Integrate proper time and position along a sampled worldline.

    ``v_of_t`` is either a callable t -> velocity or an (n, 3) array of
    samples on ``t_grid``. Trapezoidal rule, second order in the step.
    """
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise ValueError("t_grid needs at least 2 points")
    if np.any(np.diff(t) <= 0):
        raise ValueError("t_grid must be strictly increasing")
    branch = _sign(branch, "branch")
    if callable(v_of_t):
        v = np.array([_vec3(v_of_t(ti), "v") for ti in t])
    else:
        v = np.asarray(v_of_t, dtype=float)
        if v.shape != (t.size, 3):
            raise ValueError(f"velocity samples must have shape {(t.size, 3)}, got {v.shape}")
    v2 = np.einsum("ij,ij->i", v, v)
    if np.any(v2 >= 1.0):
        bad = int(np.argmax(v2 >= 1.0))
        raise DomainError(f"superluminal sample at t = {t[bad]!r}")
    rate = branch * np.sqrt(1.0 - v2)
    dt = np.diff(t)
    tau = tau0 + np.concatenate([[0.0], np.cumsum(0.5 * dt * (rate[1:] + rate[:-1]))])
    steps = 0.5 * dt[:, None] * (v[1:] + v[:-1])
    x = _vec3(x0, "x0") + np.vstack([np.zeros(3), np.cumsum(steps, axis=0)])
    return Timeline(t, tau, x)
