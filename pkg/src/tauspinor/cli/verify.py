"""Verification suite: every module invariant as a (residual, tolerance) claim."""
from __future__ import annotations

import json
import platform
import time
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from typing import Callable

import numpy as np

from .. import __version__
from .. import kinematics as kin
from .. import solver as sol
from .. import spinor as sp
from ..rng import SplitMix64
from .config import ScenarioConfig


@dataclass(frozen=True)
class Claim:
    id: str
    anchor: str
    tolerance: float
    check: Callable[[ScenarioConfig, SplitMix64], float]


@dataclass(frozen=True)
class ClaimResult:
    id: str
    anchor: str
    residual: float
    tolerance: float
    passed: bool


@dataclass
class VerificationReport:
    rows: list[ClaimResult]
    seed: int
    versions: dict
    generated_at: str = ""
    timings: dict | None = None

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.rows)

    @property
    def failed(self) -> int:
        return len(self.rows) - self.passed

    @property
    def all_passed(self) -> bool:
        return self.failed == 0

    def to_dict(self, deterministic: bool = False) -> dict:
        out = {
            "claims": [asdict(r) for r in self.rows],
            "summary": {"total": len(self.rows), "passed": self.passed, "failed": self.failed},
            "seed": self.seed,
            "versions": self.versions,
        }
        if not deterministic:
            out["generated_at"] = self.generated_at
        return out

    def to_json(self, deterministic: bool = False) -> str:
        return json.dumps(self.to_dict(deterministic), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------- kinematics

def _random_states(rng: SplitMix64, n: int) -> list[kin.KinematicState]:
    phis = rng.uniform(n, -np.pi, np.pi)
    return [kin.KinematicState(phi, tuple(s)) for phi, s in zip(phis, rng.unit_vectors(n))]


def _random_velocities(rng: SplitMix64, n: int) -> np.ndarray:
    speeds = rng.uniform(n, 0.01, 0.99)
    return rng.unit_vectors(n) * speeds[:, None]


def unit_circle(cfg, rng) -> float:
    worst = 0.0
    for st in _random_states(rng, 10_000):
        v, rate = kin.velocity_from_state(st)
        worst = max(worst, abs(v @ v + rate * rate - 1.0))
    return worst


def velocity_round_trip(cfg, rng) -> float:
    worst = 0.0
    vs = _random_velocities(rng, 2_500)
    for v in vs:
        for branch in (1, -1):
            for hel in (1, -1):
                out, rate = kin.velocity_from_state(kin.state_from_velocity(v, branch, hel))
                worst = max(worst, np.max(np.abs(out - v)), abs(rate - kin.proper_time_rate(v, branch)))
    return float(worst)


def rotate_s_norm(cfg, rng) -> float:
    st = kin.KinematicState(0.3, (0.0, 0.0, 1.0))
    axes, thetas = rng.unit_vectors(10_000), rng.uniform(10_000, -np.pi, np.pi)
    worst = 0.0
    for a, th in zip(axes, thetas):
        st = kin.rotate_s(st, a, th)
        worst = max(worst, abs(np.linalg.norm(st.s_vec) - 1.0))
    return worst


def rotate_r_inverse(cfg, rng) -> float:
    worst = 0.0
    for st, d in zip(_random_states(rng, 1_000), rng.uniform(1_000, -10, 10)):
        back = kin.rotate_r(kin.rotate_r(st, d), -d)
        worst = max(worst, abs(kin.wrap_angle(back.phi - st.phi)))
    return worst


def helicity_twins(cfg, rng) -> float:
    worst = 0.0
    for st in _random_states(rng, 1_000):
        twin = kin.KinematicState(-st.phi, tuple(-st.s_vec))
        (v1, r1), (v2, r2) = kin.velocity_from_state(st), kin.velocity_from_state(twin)
        worst = max(worst, np.max(np.abs(v1 - v2)), abs(r1 - r2))
    return float(worst)


QUADRANT_CASES = {
    np.pi / 4: (1, 1),
    3 * np.pi / 4: (-1, 1),
    -3 * np.pi / 4: (-1, -1),
    -np.pi / 4: (1, -1),
}


def classify_quadrants(cfg, rng) -> float:
    misses = 0
    for phi, expected in QUADRANT_CASES.items():
        for s in rng.unit_vectors(8):
            st = kin.KinematicState(phi, tuple(s))
            misses += kin.classify(st) != expected
            misses += kin.classify(kin.rotate_s(st, rng.unit_vectors(1)[0], 1.0)) != expected
    return float(misses)


def timeline_closed_form(cfg, rng) -> float:
    v, t_end = cfg.velocity, max(cfg.t_final, 1.0)
    t = np.linspace(0.0, t_end, 1001)
    worst = 0.0
    for branch in (1, -1):
        tl = kin.integrate_timeline(np.tile([v, 0.0, 0.0], (t.size, 1)), t, branch)
        worst = max(worst, abs(tl.tau[-1] - branch * t_end * np.sqrt(1 - v * v)))
        worst = max(worst, abs(tl.x[-1, 0] - v * t_end))
    return worst


def _smooth_timeline_error(n: int) -> float:
    # v(t) = 0.8 sin t along x: tau(t) = int sqrt(1 - 0.64 sin^2) = E(t | 0.64)
    from math import fsum

    t = np.linspace(0.0, 2.0, n + 1)
    tl = kin.integrate_timeline(lambda s: (0.8 * np.sin(s), 0.0, 0.0), t)
    # composite Gauss-Legendre reference, independent of the trapezoid path
    xs, ws = np.polynomial.legendre.leggauss(20)
    edges = np.linspace(0.0, 2.0, 41)
    ref = fsum(
        float(0.5 * (b - a) * ws @ np.sqrt(1 - 0.64 * np.sin(0.5 * (b - a) * xs + 0.5 * (a + b)) ** 2))
        for a, b in zip(edges[:-1], edges[1:])
    )
    return abs(tl.tau[-1] - ref)


def timeline_order(cfg, rng) -> float:
    ratio = _smooth_timeline_error(100) / _smooth_timeline_error(200)
    return abs(ratio - 4.0)


def classical_breit(cfg, rng) -> float:
    ps, ms = rng.normal((1_000, 3)), rng.uniform(1_000, 0.0, 3.0)
    return max(abs(kin.classical_energy(p, m) / np.sqrt(p @ p + m * m) - 1.0) for p, m in zip(ps, ms))


# ---------------------------------------------------------------- spinor

def anticommutation(cfg, rng) -> float:
    a = [sp.dirac_alpha(i) for i in (1, 2, 3)]
    b = sp.dirac_beta()
    worst = np.max(np.abs(b @ b - sp.I4))
    for i in range(3):
        worst = max(worst, np.max(np.abs(sp.anticommutator(a[i], b))))
        for j in range(3):
            worst = max(worst, np.max(np.abs(sp.anticommutator(a[i], a[j]) - 2 * (i == j) * sp.I4)))
    return float(worst)


def pauli_unit_sum(cfg, rng) -> float:
    chis = rng.spinors(10_000, 2)
    return float(max(abs(np.sum(sp.bloch_vector(c) ** 2) - 1.0) for c in chis))


def rotation_covariance(cfg, rng) -> float:
    n = 10_000
    chis, axes, thetas = rng.spinors(n, 2), rng.unit_vectors(n), rng.uniform(n, -np.pi, np.pi)
    worst = 0.0
    for chi, a, th in zip(chis, axes, thetas):
        lhs = sp.bloch_vector(sp.su2_rotation(a, th) @ chi)
        rhs = kin.rotation_matrix(a, th) @ sp.bloch_vector(chi)
        worst = max(worst, np.max(np.abs(lhs - rhs)))
    return float(worst)


def su2_group(cfg, rng) -> float:
    worst = 0.0
    for a, (t1, t2) in zip(rng.unit_vectors(1_000), rng.uniform((1_000, 2), -7, 7)):
        prod = sp.su2_rotation(a, t1) @ sp.su2_rotation(a, t2)
        worst = max(worst, np.max(np.abs(prod - sp.su2_rotation(a, t1 + t2))))
    return float(worst)


def quantize_expectations(cfg, rng) -> float:
    worst = 0.0
    for st in _random_states(rng, 10_000):
        alpha, beta = sp.dequantize(sp.quantize(st))
        v, rate = kin.velocity_from_state(st)
        worst = max(worst, abs(beta - rate), np.max(np.abs(alpha - v)))
    return float(worst)


def expectation_bound(cfg, rng) -> float:
    worst = 0.0
    for psi in rng.spinors(5_000, 4):
        alpha, beta = sp.dequantize(psi)
        worst = max(worst, beta * beta + alpha @ alpha - 1.0)
    for st in _random_states(rng, 1_000):
        alpha, beta = sp.dequantize(sp.quantize(st))
        worst = max(worst, abs(beta * beta + alpha @ alpha - 1.0))
    return max(0.0, float(worst))


def quantize_classify(cfg, rng) -> float:
    misses = 0
    for st in _random_states(rng, 2_000):
        try:
            matter, hel = kin.classify(st)
        except kin.BoundaryError:
            continue
        alpha, beta = sp.dequantize(sp.quantize(st))
        misses += np.sign(beta) != matter
        misses += np.sign(alpha @ st.s_vec) != hel
    return float(misses)


# ---------------------------------------------------------------- solver

def _random_pm(rng, n):
    return rng.normal((n, 3)) * 2.0, rng.normal(n) * 2.0


def dispersion(cfg, rng) -> float:
    ps, ms = _random_pm(rng, 1_000)
    worst = 0.0
    for p, m in zip(ps, ms):
        e = np.linalg.eigvalsh(sol.dirac_hamiltonian(p, m))
        worst = max(worst, np.max(np.abs(e**2 - (p @ p + m * m))))
    return float(worst)


def helicity_commutes(cfg, rng) -> float:
    ps, ms = _random_pm(rng, 1_000)
    return float(max(
        np.max(np.abs(sp.commutator(sol.dirac_hamiltonian(p, m), sol.helicity_operator(p))))
        for p, m in zip(ps, ms)
    ))


def eigensystem(cfg, rng) -> float:
    ps, ms = _random_pm(rng, 500)
    worst = 0.0
    for p, m in zip(ps, ms):
        modes = sol.plane_wave_eigensystem(p, m)
        u = np.stack([md.u for md in modes], axis=1)
        worst = max(worst, np.max(np.abs(u.conj().T @ u - sp.I4)), max(md.residual() for md in modes))
        h = sol.helicity_operator(p)
        worst = max(worst, max(np.linalg.norm(h @ md.u - md.helicity * md.u) for md in modes))
    return float(worst)


def quantum_breit(cfg, rng) -> float:
    ps, ms = _random_pm(rng, 1_000)
    worst = 0.0
    for p, m in zip(ps, ms):
        for md in sol.plane_wave_eigensystem(p, m):
            if md.branch > 0:
                alpha, beta = sp.dequantize(md.u)
                worst = max(worst, abs(alpha @ p + beta * m - md.energy))
    return float(worst)


def _grid_packet(cfg, **kw) -> sol.Field:
    args = dict(sigma_x=cfg.sigma_x, kappa0=cfg.kappa0, k0=cfg.k0, x0=cfg.x0,
                branch=cfg.branch, helicity=cfg.helicity)
    args.update(kw)
    return sol.gaussian_packet(cfg.nx, cfg.ntau, cfg.lx, cfg.ltau, **args)


def _mixed_field(cfg, rng) -> sol.Field:
    """Packet superposed over several mass sectors and both energy branches."""
    f = sol.Field.zeros(cfg.nx, cfg.ntau, cfg.lx, cfg.ltau)
    base = 2 * np.pi / cfg.ltau
    for n_kappa, branch in ((2, 1), (-1, -1), (3, 1)):
        c = complex(*rng.normal(2))
        f = f + c * _grid_packet(cfg, kappa0=n_kappa * base, branch=branch)
    return f.normalized()


def unitarity(cfg, rng) -> float:
    f = _mixed_field(cfg, rng)
    n0, g = f.norm2(), f
    for _ in range(1_000):
        g = sol.evolve(g, 0.01)
    return abs(g.norm2() - n0)


def evolve_group(cfg, rng) -> float:
    f = _mixed_field(cfg, rng)
    t1, t2 = rng.uniform(2, 0.0, 3.0)
    return float(np.max(np.abs(sol.evolve(sol.evolve(f, t1), t2).data - sol.evolve(f, t1 + t2).data)))


def mass_closure(cfg, rng) -> float:
    f = _mixed_field(cfg, rng)
    worst = 0.0
    for n in (2, -1, 0):
        kappa = n * 2 * np.pi / cfg.ltau
        a = sol.evolve(sol.project_mass_sector(f, kappa), 1.7)
        b = sol.project_mass_sector(sol.evolve(f, 1.7), kappa)
        worst = max(worst, np.max(np.abs(a.data - b.data)))
    return float(worst)


def tau_translation(cfg, rng) -> float:
    f = _mixed_field(cfg, rng)
    d = float(rng.uniform(1, -3, 3)[0])
    a = sol.evolve(sol.translate_tau(f, d), 1.3)
    b = sol.translate_tau(sol.evolve(f, 1.3), d)
    return float(np.max(np.abs(a.data - b.data)))


def reversal_covariance(cfg, rng) -> float:
    f = _mixed_field(cfg, rng)
    a = sol.evolve(sol.proper_time_reversal(f), 2.1)
    b = sol.proper_time_reversal(sol.evolve(f, 2.1))
    return float(np.max(np.abs(a.data - b.data)))


def reversal_spectrum(cfg, rng) -> float:
    f = _mixed_field(cfg, rng)
    before = {round(r.kappa, 9): r.weight for r in sol.mass_spectrum(f)}
    after = sol.mass_spectrum(sol.proper_time_reversal(f))
    nyquist = np.pi / (cfg.ltau / cfg.ntau)
    worst = 0.0
    for r in after:
        mirror = -r.kappa if abs(abs(r.kappa) - nyquist) > 1e-9 else r.kappa
        worst = max(worst, abs(r.weight - before[round(mirror, 9)]))
    return worst


def reversal_energy(cfg, rng) -> float:
    """Positive-energy plane waves keep their evolution phase after reversal."""
    worst = 0.0
    for nk, nq in ((0, 2), (3, 1), (-2, 3), (5, -2)):
        k, q = nk * 2 * np.pi / cfg.lx, nq * 2 * np.pi / cfg.ltau
        pw = sol.make_plane_wave(cfg.nx, cfg.ntau, cfg.lx, cfg.ltau, k, q, 1, 1)
        rev = sol.proper_time_reversal(pw)
        t = 0.9
        e = np.hypot(k, q)
        for f in (pw, rev):
            phase = f.inner(sol.evolve(f, t))
            worst = max(worst, abs(phase - np.exp(-1j * e * t)))
    return float(worst)


def standard_dirac(cfg, rng) -> float:
    base = sol.Field.zeros(cfg.nx, cfg.ntau, cfg.lx, cfg.ltau)
    envelope = np.exp(-((base.x - cfg.x0) ** 2) / (2 * cfg.sigma_x**2) + 1j * cfg.k0 * base.x)
    spinor = sp.normalize(rng.normal(4) + 1j * rng.normal(4))
    xprofile = envelope[:, None] * spinor
    xprofile /= np.sqrt(np.sum(np.abs(xprofile) ** 2) * base.dx)
    return sol.compare_standard_dirac(xprofile, cfg.kappa0, 5.0, cfg.lx, cfg.ltau, cfg.ntau)


def _lagrangian_field(cfg):
    return _grid_packet(cfg)


def lagrangian_absolute(cfg, rng) -> float:
    return sol.lagrangian_residual(_lagrangian_field(cfg), 1e-3)


def lagrangian_order(cfg, rng) -> float:
    f = _lagrangian_field(cfg)
    return abs(sol.lagrangian_residual(f, 2e-3) / sol.lagrangian_residual(f, 1e-3) - 4.0)


def ehrenfest(cfg, rng) -> float:
    f = _grid_packet(cfg, x0=cfg.x0 - 4.0)
    worst = 0.0
    for t in np.linspace(0.0, 2.0, 9):
        res = sol.ehrenfest_velocity(f, t, 1e-3)
        worst = max(worst, abs(res.slope - res.velocity[0]))
    return worst


def ehrenfest_zitter(cfg, rng) -> float:
    f = (_grid_packet(cfg, branch=1) + _grid_packet(cfg, branch=-1)).normalized()
    worst = 0.0
    for t in np.linspace(0.0, 2.0, 9):
        res = sol.ehrenfest_velocity(f, t, 1e-3)
        worst = max(worst, abs(res.slope - res.velocity[0]))
    return worst


def random_uncertainty_field(rng: SplitMix64, ntau: int, ltau: float) -> sol.Field:
    """Grid noise or a superposition of 1-3 resolved, interior Gaussian tau packets."""
    nx = 4
    kind = int(rng.uniform(1, 0, 4)[0])
    if kind == 0:
        data = rng.normal((nx, ntau, 4)) + 1j * rng.normal((nx, ntau, 4))
        return sol.Field(nx, ntau, 1.0, ltau, data)
    dtau = ltau / ntau
    tau = (np.arange(ntau) - ntau // 2) * dtau
    data = np.zeros((ntau, 4), complex)
    for _ in range(kind):
        width = rng.uniform(1, 2.0 * dtau, max(2.0 * dtau, ltau / 12))[0]
        reach = ltau / 2 - 6 * width
        centre = rng.uniform(1, -reach, reach)[0]
        carrier = 2 * np.pi / ltau * np.floor(rng.uniform(1, -ntau / 4, ntau / 4)[0])
        amp = complex(*rng.normal(2))
        profile = np.exp(-((tau - centre) ** 2) / (2 * width**2) + 1j * carrier * tau)
        data += amp * profile[:, None] * rng.spinors(1, 4)[0]
    return sol.Field(nx, ntau, 1.0, ltau, np.broadcast_to(data, (nx, ntau, 4)))


def uncertainty_bound(cfg, rng) -> float:
    worst = np.inf
    for _ in range(1_000):
        worst = min(worst, sol.uncertainty_check(random_uncertainty_field(rng, cfg.ntau, cfg.ltau)).product)
    return max(0.0, 0.5 - worst)


def uncertainty_gaussian(cfg, rng) -> float:
    base = sol.Field.zeros(4, cfg.ntau, 1.0, cfg.ltau)
    s = cfg.sigma_tau
    profile = np.exp(-(base.tau**2) / (2 * s * s) + 1j * cfg.kappa0 * base.tau)
    f = sol.Field.from_profiles(np.ones(4), profile, [1, 0, 0, 0], 1.0, cfg.ltau)
    return abs(sol.uncertainty_check(f).product - 0.5)


CLAIMS: list[Claim] = [
    Claim("kinematics.unit_circle", "|dx/dt|^2 + (dtau/dt)^2 = 1", 1e-12, unit_circle),
    Claim("kinematics.velocity_round_trip", "dtau/dt = r3, dx/dt = r1 s", 1e-12, velocity_round_trip),
    Claim("kinematics.rotate_s_norm", "s_i -> R_n(theta)_ij s_j", 1e-12, rotate_s_norm),
    Claim("kinematics.rotate_r_inverse", "r -> R_2(phi) r", 1e-12, rotate_r_inverse),
    Claim("kinematics.helicity_twins", "(s, phi) ~ (-s, -phi)", 1e-12, helicity_twins),
    Claim("kinematics.classify_quadrants", "quadrants: up/down x particle/antiparticle", 0.0, classify_quadrants),
    Claim("kinematics.timeline_closed_form", "dtau = +-dt/gamma", 1e-10, timeline_closed_form),
    Claim("kinematics.timeline_order", "dtau = +-dt/gamma (trapezoid order 2)", 0.5, timeline_order),
    Claim("kinematics.classical_breit", "E = v.p + tau_dot m", 1e-12, classical_breit),
    Claim("spinor.anticommutation", "{alpha_i, alpha_j} = 2 delta_ij, {alpha_i, beta} = 0, beta^2 = 1", 0.0, anticommutation),
    Claim("spinor.pauli_unit_sum", "sum_i <sigma_i>^2 = 1", 1e-12, pauli_unit_sum),
    Claim("spinor.rotation_covariance", "<J_k> -> R_kl <J_l>", 1e-12, rotation_covariance),
    Claim("spinor.su2_group", "D(R1) D(R2) = D(R1 R2)", 1e-12, su2_group),
    Claim("spinor.quantize", "r3 -> rho_3 x I = beta, r1 s -> rho_1 x sigma = alpha", 1e-12, quantize_expectations),
    Claim("spinor.expectation_bound", "<beta>^2 + |<alpha>|^2 <= 1", 1e-12, expectation_bound),
    Claim("spinor.quantize_classify", "<beta> < 0 for antiparticles", 0.0, quantize_classify),
    Claim("solver.dispersion", "E^2 = p^2 + m^2", 1e-10, dispersion),
    Claim("solver.helicity_commutes", "[H, sigma.p/p] = 0", 1e-12, helicity_commutes),
    Claim("solver.eigensystem", "H u = E u, h u = +-u, orthonormal", 1e-10, eigensystem),
    Claim("solver.quantum_breit", "<alpha>.p + <beta> m = E", 1e-10, quantum_breit),
    Claim("solver.unitarity", "d/dt psi^* psi = 0", 1e-10, unitarity),
    Claim("solver.evolve_group", "i d_t psi = H_g psi (group property)", 1e-10, evolve_group),
    Claim("solver.mass_closure", "m -> -i d_tau (mass sectors conserved)", 1e-10, mass_closure),
    Claim("solver.tau_translation", "tau -> tau + a commutes with H_g", 1e-10, tau_translation),
    Claim("solver.reversal_covariance", "tau -> -tau commutes with evolution", 1e-10, reversal_covariance),
    Claim("solver.reversal_spectrum", "tau -> -tau: kappa -> -kappa", 1e-10, reversal_spectrum),
    Claim("solver.reversal_energy", "tau -> -tau: energy unchanged", 1e-10, reversal_energy),
    Claim("solver.standard_dirac", "H_g on e^{i m tau} = alpha.p + beta m", 1e-10, standard_dirac),
    Claim("solver.lagrangian_absolute", "L psi = i(d_t + alpha.d_x + beta d_tau) psi = 0", 1e-6, lagrangian_absolute),
    Claim("solver.lagrangian_order", "L psi = 0 (centred difference order 2)", 0.5, lagrangian_order),
    Claim("solver.ehrenfest", "d<x>/dt = <alpha>", 1e-4, ehrenfest),
    Claim("solver.ehrenfest_zitterbewegung", "d<x>/dt = <alpha> (both energy branches)", 1e-4, ehrenfest_zitter),
    Claim("solver.uncertainty_bound", "Delta tau Delta m >= 1/2", 1e-6, uncertainty_bound),
    Claim("solver.uncertainty_gaussian", "Delta tau Delta m = 1/2 (Gaussian)", 1e-3, uncertainty_gaussian),
]


def _claim_seed(seed: int, index: int) -> int:
    # independent stream per claim so adding a claim never shifts the others
    return SplitMix64(seed).next_u64(index + 1)[-1].item()


def run_verify(cfg: ScenarioConfig, claims: list[Claim] | None = None) -> VerificationReport:
    rows, timings = [], {}
    for i, claim in enumerate(claims if claims is not None else CLAIMS):
        rng = SplitMix64(_claim_seed(cfg.seed, i))
        start = time.perf_counter()
        residual = float(claim.check(cfg, rng))
        timings[claim.id] = time.perf_counter() - start
        tol = claim.tolerance if cfg.tolerance is None else cfg.tolerance
        rows.append(ClaimResult(claim.id, claim.anchor, residual, tol, bool(residual <= tol)))
    versions = {"tauspinor": __version__, "numpy": np.__version__, "python": platform.python_version()}
    return VerificationReport(
        rows, cfg.seed, versions,
        generated_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        timings=timings,
    )
