"""Plane-wave Dirac eigensystem and spectral evolution on a periodic (x, tau) grid.

The generalized equation is i d/dt psi = [alpha_1 (-i d/dx) + beta (-i d/dtau)] psi:
the mass term is replaced by the internal-time momentum -i d/dtau, so a
Fourier mode e^{i(kx + kappa tau)} evolves under the 4x4 matrix
H_mode = alpha_1 k + beta kappa. Evolution is exact per mode; there is no
time stepping error.

Conventions: forward FFT carries e^{-ikx}; plane waves are e^{+i(kx + kappa tau - Et)};
x and tau grids are centred on zero.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .kinematics import DomainError, _vec3
from .spinor import I2, bloch_to_spinor, dirac_alpha, dirac_beta, kron, pauli

ALPHA = np.stack([dirac_alpha(i) for i in (1, 2, 3)])
BETA = dirac_beta()
# commutes with every alpha_i, anticommutes with beta
REVERSAL = kron(pauli(1), I2)

GRID_TOL = 1e-9


def dirac_hamiltonian(p, m: float) -> np.ndarray:
    """alpha . p + beta m."""
    p = _vec3(p, "p")
    return np.einsum("i,ijk->jk", p.astype(complex), ALPHA) + m * BETA


def helicity_operator(p) -> np.ndarray:
    """(I (x) sigma . p) / |p|."""
    p = _vec3(p, "p")
    pn = np.linalg.norm(p)
    if pn == 0.0:
        raise DomainError("helicity operator is undefined for p = 0")
    sigma_p = sum(p[j] * pauli(j + 1) for j in range(3)) / pn
    return kron(I2, sigma_p)


@dataclass(frozen=True)
class ModeSolution:
    """One eigenpair of alpha . p + beta kappa.

    ``helicity`` is the eigenvalue of the helicity operator for p != 0 and
    of I (x) sigma_3 at p = 0.
    """

    p: tuple[float, float, float]
    kappa: float
    energy: float
    branch: int
    helicity: int
    u: np.ndarray

    @property
    def k(self) -> float:
        """Wavenumber along x (the evolving axis)."""
        return self.p[0]

    def residual(self) -> float:
        h = dirac_hamiltonian(self.p, self.kappa)
        return float(np.linalg.norm(h @ self.u - self.energy * self.u))


def _mode_spinor(kpar, kappa, branch, spin_axis, spin):
    """Eigenspinor(s) of H restricted to the sigma-eigenspace ``spin`` along ``spin_axis``.

    On chi with (sigma . axis) chi = spin * chi, H acts on r-space as
    spin*kpar*rho_1 + kappa*rho_3 = E (n . rho), n = (sin th, 0, cos th).
    The r-factor is (cos th/2, sin th/2) for +E and (-sin th/2, cos th/2) for -E,
    with th continuous in kpar at fixed kappa != 0 so packets stay smooth in k.
    Broadcasts over kpar/kappa.
    """
    kpar, kappa = np.broadcast_arrays(np.asarray(kpar, float), np.asarray(kappa, float))
    th = np.arctan2(spin * kpar, kappa)
    th = np.where(kappa < 0, np.mod(th, 2 * np.pi), th)
    c, s = np.cos(th / 2), np.sin(th / 2)
    r_part = np.stack([c, s], axis=-1) if branch > 0 else np.stack([-s, c], axis=-1)
    s_part = bloch_to_spinor(spin * np.asarray(spin_axis, float))
    return np.einsum("...a,b->...ab", r_part.astype(complex), s_part).reshape(kpar.shape + (4,))


def plane_wave_eigensystem(p, m: float) -> list[ModeSolution]:
    """Four orthonormal eigenpairs ordered (+E,+h), (+E,-h), (-E,+h), (-E,-h)."""
    p = _vec3(p, "p")
    pn = float(np.linalg.norm(p))
    if pn == 0.0 and m == 0.0:
        raise DomainError("p = 0 and m = 0: energy eigenspaces are fully degenerate")
    energy = float(np.hypot(pn, m))
    axis = p / pn if pn > 0 else np.array([0.0, 0.0, 1.0])
    modes = []
    for branch in (1, -1):
        for hel in (1, -1):
            u = _mode_spinor(pn, m, branch, axis, hel)
            modes.append(ModeSolution(tuple(p), float(m), branch * energy, branch, hel, u))
    return modes


def _is_pow2(n: int) -> bool:
    return n >= 4 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Field:
    """Four-component wavefunction sampled on an nx x ntau periodic grid."""

    nx: int
    ntau: int
    lx: float
    ltau: float
    data: np.ndarray
    t: float = 0.0

    def __post_init__(self) -> None:
        for name in ("nx", "ntau"):
            if not _is_pow2(getattr(self, name)):
                raise ValueError(f"{name} must be a power of two >= 4")
        if self.lx <= 0 or self.ltau <= 0:
            raise ValueError("box lengths must be positive")
        data = np.asarray(self.data, dtype=complex)
        if data.shape != (self.nx, self.ntau, 4):
            raise ValueError(f"data must have shape {(self.nx, self.ntau, 4)}, got {data.shape}")
        object.__setattr__(self, "data", data)

    @classmethod
    def zeros(cls, nx: int, ntau: int, lx: float, ltau: float) -> "Field":
        return cls(nx, ntau, lx, ltau, np.zeros((nx, ntau, 4), complex))

    def replace(self, data: np.ndarray, t: float | None = None) -> "Field":
        return Field(self.nx, self.ntau, self.lx, self.ltau, data, self.t if t is None else t)

    @property
    def dx(self) -> float:
        return self.lx / self.nx

    @property
    def dtau(self) -> float:
        return self.ltau / self.ntau

    @property
    def x(self) -> np.ndarray:
        return (np.arange(self.nx) - self.nx // 2) * self.dx

    @property
    def tau(self) -> np.ndarray:
        return (np.arange(self.ntau) - self.ntau // 2) * self.dtau

    @property
    def k(self) -> np.ndarray:
        return 2 * np.pi * np.fft.fftfreq(self.nx, self.dx)

    @property
    def kappa(self) -> np.ndarray:
        return 2 * np.pi * np.fft.fftfreq(self.ntau, self.dtau)

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.data) ** 2) * self.dx * self.dtau)

    def inner(self, other: "Field") -> complex:
        return complex(np.vdot(self.data, other.data) * self.dx * self.dtau)

    def normalized(self) -> "Field":
        return self.replace(self.data / np.sqrt(self.norm2()))

    def same_grid(self, other: "Field") -> bool:
        return (self.nx, self.ntau, self.lx, self.ltau) == (other.nx, other.ntau, other.lx, other.ltau)

    def __add__(self, other: "Field") -> "Field":
        if not self.same_grid(other):
            raise ValueError("fields live on different grids")
        return self.replace(self.data + other.data)

    def __sub__(self, other: "Field") -> "Field":
        return self + other * -1.0

    def __mul__(self, scalar: complex) -> "Field":
        return self.replace(self.data * scalar)

    __rmul__ = __mul__

    @classmethod
    def from_profiles(cls, x_amp, tau_amp, spinor, lx: float, ltau: float) -> "Field":
        """Product field x_amp(x) * tau_amp(tau) * spinor, normalized."""
        x_amp, tau_amp = np.asarray(x_amp, complex), np.asarray(tau_amp, complex)
        data = x_amp[:, None, None] * tau_amp[None, :, None] * np.asarray(spinor, complex)
        return cls(x_amp.size, tau_amp.size, lx, ltau, data).normalized()


def _grid_index(value: float, length: float, n: int, what: str) -> int:
    q = value * length / (2 * np.pi)
    j = int(round(q))
    if abs(q - j) > GRID_TOL * max(1.0, abs(q)) or not (-n // 2 <= j < n // 2):
        raise ValueError(f"{what} = {value!r} is not on the grid 2*pi*n/{length!r}, |n| <= {n // 2}")
    return j % n


def kx_index(field: Field, k: float) -> int:
    return _grid_index(k, field.lx, field.nx, "k")


def kappa_index(field: Field, kappa: float) -> int:
    return _grid_index(kappa, field.ltau, field.ntau, "kappa")


def _spectral(field: Field) -> np.ndarray:
    return np.fft.fft2(field.data, axes=(0, 1))


def _real(field: Field, coeffs: np.ndarray, t: float | None = None) -> Field:
    return field.replace(np.fft.ifft2(coeffs, axes=(0, 1)), t)


def _mode_grids(field: Field) -> tuple[np.ndarray, np.ndarray]:
    return np.meshgrid(field.k, field.kappa, indexing="ij")


_BETA_DIAG = np.real(np.diag(BETA))


def _apply_mode_hamiltonian(coeffs: np.ndarray, kk: np.ndarray, qq: np.ndarray) -> np.ndarray:
    # alpha_1 reverses the component order, beta is diag(1, 1, -1, -1)
    return kk[..., None] * coeffs[..., ::-1] + qq[..., None] * (coeffs * _BETA_DIAG)


def apply_hamiltonian(field: Field) -> Field:
    """H_g psi with both derivatives taken spectrally."""
    kk, qq = _mode_grids(field)
    return _real(field, _apply_mode_hamiltonian(_spectral(field), kk, qq))


def make_plane_wave(
    nx: int, ntau: int, lx: float, ltau: float,
    k: float, kappa: float, branch: int = 1, helicity: int = 1,
) -> Field:
    """Unit-norm u e^{i(kx + kappa tau)} with u an eigenspinor of alpha_1 k + beta kappa."""
    field = Field.zeros(nx, ntau, lx, ltau)
    kx_index(field, k)
    kappa_index(field, kappa)
    mode = next(
        m for m in plane_wave_eigensystem((k, 0.0, 0.0), kappa)
        if m.branch == branch and m.helicity == helicity
    )
    phase = np.exp(1j * (k * field.x[:, None] + kappa * field.tau[None, :]))
    data = phase[..., None] * mode.u / np.sqrt(lx * ltau)
    return field.replace(data)


def gaussian_packet(
    nx: int, ntau: int, lx: float, ltau: float, *,
    sigma_x: float, kappa0: float, k0: float = 0.0, x0: float = 0.0,
    branch: int = 1, helicity: int = 1,
    sigma_tau: float | None = None, tau0: float = 0.0,
) -> Field:
    """Normalized Gaussian packet built mode by mode from one energy branch.

    Spatial profile exp(-(x-x0)^2 / (2 sigma_x^2)) around mean momentum k0.
    With ``sigma_tau`` unset the packet is a pure mass sector at ``kappa0``;
    otherwise the tau profile is a Gaussian of width ``sigma_tau`` around
    ``tau0`` carrying mean internal momentum ``kappa0``. The spin factor is
    the sigma_1 eigenstate matching ``helicity`` at k0, held fixed across the
    packet so the spinor varies smoothly with k.
    """
    field = Field.zeros(nx, ntau, lx, ltau)
    if sigma_tau is None:
        kappa_index(field, kappa0)
    kk, qq = _mode_grids(field)
    amp = np.exp(-0.5 * ((kk - k0) * sigma_x) ** 2 - 1j * kk * x0)
    if sigma_tau is None:
        amp = amp * np.isclose(qq, kappa0, atol=1e-9 * max(1.0, abs(kappa0)))
    else:
        amp = amp * np.exp(-0.5 * ((qq - kappa0) * sigma_tau) ** 2 - 1j * qq * tau0)
    spin = helicity * (1 if k0 >= 0 else -1)
    u = _mode_spinor(kk, qq, branch, (1.0, 0.0, 0.0), spin)
    # coefficients defined against e^{ikx} on the centred grid
    shift = np.exp(1j * (kk * field.x[0] + qq * field.tau[0]))
    return _real(field, (amp * shift)[..., None] * u).normalized()


def propagator_factors(field: Field, t: float) -> tuple[np.ndarray, np.ndarray]:
    """cos(Et) and sin(Et)/E per mode, with the E = 0 limit taken exactly."""
    kk, qq = _mode_grids(field)
    e = np.hypot(kk, qq)
    return np.cos(e * t), t * np.sinc(e * t / np.pi)


def evolve(field: Field, t: float) -> Field:
    """Exact propagation by exp(-i H_g t), applied per Fourier mode."""
    if t == 0:
        return field.replace(field.data.copy())
    kk, qq = _mode_grids(field)
    c = _spectral(field)
    cos_et, sin_over_e = propagator_factors(field, t)
    out = cos_et[..., None] * c - 1j * sin_over_e[..., None] * _apply_mode_hamiltonian(c, kk, qq)
    return _real(field, out, field.t + t)


@dataclass(frozen=True)
class SpectrumRow:
    kappa: float
    weight: float


def _kappa_weights(field: Field) -> np.ndarray:
    c = _spectral(field)
    scale = field.dx * field.dtau / (field.nx * field.ntau)
    return np.sum(np.abs(c) ** 2, axis=(0, 2)) * scale


def mass_spectrum(field: Field) -> list[SpectrumRow]:
    """Norm carried by each internal-time momentum, ascending in kappa."""
    w = _kappa_weights(field)
    order = np.argsort(field.kappa)
    return [SpectrumRow(float(field.kappa[j]), float(w[j])) for j in order]


def project_mass_sector(field: Field, kappa: float) -> Field:
    j = kappa_index(field, kappa)
    c = _spectral(field)
    mask = np.zeros(field.ntau, bool)
    mask[j] = True
    return _real(field, np.where(mask[None, :, None], c, 0.0))


def translate_tau(field: Field, dtau: float) -> Field:
    """Spectral shift returning psi(x, tau + dtau).

    A pure e^{i kappa0 tau} field picks up the global phase e^{i kappa0 dtau}.
    """
    phase = np.exp(1j * field.kappa * dtau)
    return _real(field, _spectral(field) * phase[None, :, None])


def proper_time_reversal(field: Field) -> Field:
    """psi(x, tau) -> M psi(x, -tau) with M = rho_1 (x) I.

    M is the standard-representation matrix that commutes with alpha and
    anticommutes with beta, which is what makes the reflected field a
    solution again. Positive-energy modes at kappa map to positive-energy
    modes at -kappa.
    """
    idx = (-np.arange(field.ntau)) % field.ntau
    return field.replace(field.data[:, idx, :] @ REVERSAL.T)


def _standard_dirac_1d(xprofile: np.ndarray, m: float, t: float, lx: float) -> np.ndarray:
    # independent of evolve(): numerical eigendecomposition of each 4x4 mode matrix
    nx = xprofile.shape[0]
    k = 2 * np.pi * np.fft.fftfreq(nx, lx / nx)
    h = k[:, None, None] * ALPHA[0] + m * BETA
    w, v = np.linalg.eigh(h)
    u = np.einsum("kij,kj,klj->kil", v, np.exp(-1j * w * t), v.conj())
    c = np.fft.fft(xprofile, axis=0)
    return np.fft.ifft(np.einsum("kij,kj->ki", u, c), axis=0)


def compare_standard_dirac(
    xprofile: np.ndarray, m: float, t: float, lx: float, ltau: float, ntau: int = 8,
) -> float:
    """Max pointwise gap between generalized evolution of e^{i m tau} xprofile
    and standard 1D Dirac evolution (mass m) of xprofile.
    """
    xprofile = np.asarray(xprofile, dtype=complex)
    nx = xprofile.shape[0]
    base = Field.zeros(nx, ntau, lx, ltau)
    kappa_index(base, m)
    tau_phase = np.exp(1j * m * base.tau)
    embedded = base.replace(xprofile[:, None, :] * tau_phase[None, :, None])
    generalized = evolve(embedded, t).data
    standard = _standard_dirac_1d(xprofile, m, t, lx)[:, None, :] * tau_phase[None, :, None]
    return float(np.max(np.abs(generalized - standard)))


def stationarity_residual(before: Field, after: Field, dt: float, midpoint: Field | None = None) -> float:
    """|| i (after - before)/dt - H_g midpoint || / || before ||.

    This is the centred-difference form of L psi = 0. The midpoint defaults to
    the average of the two fields.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if midpoint is None:
        midpoint = (before + after) * 0.5
    lhs = (after - before) * (1j / dt)
    res = lhs - apply_hamiltonian(midpoint)
    return float(np.sqrt(res.norm2() / before.norm2()))


def lagrangian_residual(field: Field, dt: float) -> float:
    """Stationarity residual of the exact solution through ``field``; O(dt^2)."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    return stationarity_residual(field, evolve(field, dt), dt, evolve(field, dt / 2))


def position_mean(field: Field) -> float:
    density = np.sum(np.abs(field.data) ** 2, axis=(1, 2))
    return float(density @ field.x / density.sum())


def velocity_mean(field: Field) -> np.ndarray:
    """(<alpha_1>, <alpha_2>, <alpha_3>) over the whole field."""
    num = np.einsum("xta,iab,xtb->i", field.data.conj(), ALPHA, field.data).real
    return num / np.sum(np.abs(field.data) ** 2)


def edge_weight(field: Field, fraction: float = 0.05) -> float:
    """Probability within ``fraction`` of the box at either x edge."""
    density = np.sum(np.abs(field.data) ** 2, axis=(1, 2))
    n = max(1, int(fraction * field.nx))
    return float((density[:n].sum() + density[-n:].sum()) / density.sum())


class EhrenfestResult(NamedTuple):
    velocity: np.ndarray
    slope: float
    wrapped: bool


def ehrenfest_velocity(field: Field, t: float, dt: float, edge_tol: float = 1e-8) -> EhrenfestResult:
    """<alpha> at time t and the centred slope of <x> over [t - dt, t + dt].

    ``field`` is the state at its own ``field.t``; times are relative to it.
    The position mean is only meaningful for packets away from the x edges;
    otherwise ``wrapped`` is set and a RuntimeWarning issued.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    now = evolve(field, t)
    before, after = evolve(now, -dt), evolve(now, dt)
    wrapped = max(edge_weight(f) for f in (before, now, after)) > edge_tol
    if wrapped:
        warnings.warn("packet reaches the periodic x boundary; <x> is unreliable", RuntimeWarning)
    slope = (position_mean(after) - position_mean(before)) / (2 * dt)
    return EhrenfestResult(velocity_mean(now), slope, wrapped)


class UncertaintyResult(NamedTuple):
    delta_tau: float
    delta_kappa: float
    product: float


def _std(values: np.ndarray, weights: np.ndarray) -> float:
    w = weights / weights.sum()
    mean = w @ values
    return float(np.sqrt(max(0.0, w @ (values - mean) ** 2)))


def uncertainty_check(field: Field) -> UncertaintyResult:
    """Standard deviations of the tau marginal and of the kappa spectrum."""
    p_tau = np.sum(np.abs(field.data) ** 2, axis=(0, 2))
    if p_tau.sum() == 0:
        raise ValueError("field has zero norm")
    d_tau = _std(field.tau, p_tau)
    d_kappa = _std(field.kappa, _kappa_weights(field))
    return UncertaintyResult(d_tau, d_kappa, d_tau * d_kappa)
