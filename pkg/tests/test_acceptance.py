"""Acceptance suite: twelve criteria, each with its tolerance and runtime limit."""
import numpy as np

from tauspinor import kinematics as kin
from tauspinor import solver as sol
from tauspinor import spinor as sp
from tauspinor.cli.verify import random_uncertainty_field
from tauspinor.rng import SplitMix64

SEED = 20240601
NX, NTAU, LX, LTAU = 256, 64, 64.0, 16.0
DK, DKAPPA = 2 * np.pi / LX, 2 * np.pi / LTAU


def _packet(**kw):
    args = dict(sigma_x=4.0, kappa0=2 * DKAPPA, k0=4 * DK)
    args.update(kw)
    return sol.gaussian_packet(NX, NTAU, LX, LTAU, **args)


def _gap(a, b):
    return float(np.max(np.abs(a.data - b.data)))


def test_01_dirac_algebra(criterion):
    with criterion(1, "Dirac algebra holds exactly", 1.0):
        alpha = [sp.dirac_alpha(i) for i in (1, 2, 3)]
        beta = sp.dirac_beta()
        for i in range(3):
            for j in range(3):
                np.testing.assert_array_equal(sp.anticommutator(alpha[i], alpha[j]), 2 * (i == j) * np.eye(4))
            np.testing.assert_array_equal(sp.anticommutator(alpha[i], beta), np.zeros((4, 4)))
        np.testing.assert_array_equal(beta @ beta, np.eye(4))


def test_02_unit_vector_quantization(criterion):
    with criterion(2, "quantize reproduces classical velocities (1e4 states)", 5.0):
        rng = SplitMix64(SEED)
        phis = rng.uniform(10_000, -np.pi, np.pi)
        worst = 0.0
        for phi, s in zip(phis, rng.unit_vectors(10_000)):
            state = kin.KinematicState(phi, tuple(s))
            alpha, beta = sp.dequantize(sp.quantize(state))
            v, rate = kin.velocity_from_state(state)
            worst = max(worst, abs(beta - rate), np.max(np.abs(alpha - v)))
        assert worst < 1e-12, worst


def test_03_rotation_covariance(criterion):
    with criterion(3, "rotation covariance and unit Pauli sum (1e4 spinors)", 5.0):
        rng = SplitMix64(SEED + 3)
        chis = rng.spinors(10_000, 2)
        axes = rng.unit_vectors(10_000)
        thetas = rng.uniform(10_000, -2 * np.pi, 2 * np.pi)
        worst = 0.0
        for chi, n, th in zip(chis, axes, thetas):
            b = sp.bloch_vector(chi)
            worst = max(worst, abs(b @ b - 1))
            rotated = sp.bloch_vector(sp.su2_rotation(n, th) @ chi)
            worst = max(worst, np.max(np.abs(rotated - kin.rotation_matrix(n, th) @ b)))
        assert worst < 1e-12, worst


def test_04_dispersion(criterion):
    with criterion(4, "E^2 = p^2 + m^2 (1e3 random p, m)", 5.0):
        rng = SplitMix64(SEED + 4)
        ps = rng.normal((1000, 3)) * 3
        ms = rng.uniform(1000, -5, 5)
        worst = 0.0
        for p, m in zip(ps, ms):
            e = np.linalg.eigvalsh(sol.dirac_hamiltonian(p, m))
            worst = max(worst, np.max(np.abs(e**2 - (p @ p + m * m))))
        assert worst < 1e-10, worst


def test_05_generalized_evolution(criterion):
    with criterion(5, "norm over 1e3 steps, commutes with mass projection and tau shift", 60.0):
        f = (_packet(sigma_tau=1.0) + _packet(branch=-1, kappa0=-DKAPPA, k0=-2 * DK)).normalized()
        g = f
        for _ in range(1000):
            g = sol.evolve(g, 0.01)
        assert abs(g.norm2() - f.norm2()) < 1e-10
        t = 3.0
        for n in (-1, 0, 2):
            a = sol.evolve(sol.project_mass_sector(f, n * DKAPPA), t)
            b = sol.project_mass_sector(sol.evolve(f, t), n * DKAPPA)
            assert _gap(a, b) < 1e-10
        for shift in (0.3, -1.7):
            a = sol.evolve(sol.translate_tau(f, shift), t)
            b = sol.translate_tau(sol.evolve(f, t), shift)
            assert _gap(a, b) < 1e-10


def test_06_standard_dirac_reduction(criterion):
    with criterion(6, "single mass sector reproduces standard Dirac evolution", 30.0):
        x = (np.arange(NX) - NX // 2) * LX / NX
        prof = np.exp(-x**2 / (2 * 4.0**2) + 1j * 4 * DK * x)[:, None] * sp.normalize([1, 0.5j, 0.2, -0.4])
        assert sol.compare_standard_dirac(prof, 2 * DKAPPA, 5.0, LX, LTAU, NTAU) < 1e-10


def test_07_stationarity(criterion):
    with criterion(7, "Lagrangian residual is second order and < 1e-6 at dt = 1e-3", 30.0):
        f = _packet()
        r1 = sol.lagrangian_residual(f, 1e-3)
        r2 = sol.lagrangian_residual(f, 2e-3)
        assert r1 < 1e-6, r1
        assert abs(r2 / r1 - 4) <= 0.5, r2 / r1


def test_08_ehrenfest(criterion):
    with criterion(8, "d<x>/dt = <alpha_1> for a boosted packet, t in [0, 2]", 60.0):
        f = _packet()
        for t in np.linspace(0, 2, 21):
            res = sol.ehrenfest_velocity(f, t, 1e-3)
            assert not res.wrapped
            assert abs(res.slope - res.velocity[0]) < 1e-4
        assert sol.ehrenfest_velocity(f, 1.0, 1e-3).velocity[0] > 0.1


def test_09_breit_identity(criterion):
    with criterion(9, "<alpha>.p + <beta> m = E for positive-energy modes", 5.0):
        rng = SplitMix64(SEED + 9)
        worst = 0.0
        for p, m in zip(rng.normal((1000, 3)) * 2, rng.uniform(1000, -3, 3)):
            for mode in sol.plane_wave_eigensystem(p, m)[:2]:
                alpha, beta = sp.dequantize(mode.u)
                worst = max(worst, abs(alpha @ p + beta * m - mode.energy))
        assert worst < 1e-10, worst


def test_10_tau_reversal(criterion):
    with criterion(10, "tau reversal mirrors the mass spectrum and keeps energies", 30.0):
        f = _packet(sigma_tau=0.8, kappa0=DKAPPA)
        before = {round(r.kappa / DKAPPA): r.weight for r in sol.mass_spectrum(f)}
        after = {round(r.kappa / DKAPPA): r.weight for r in sol.mass_spectrum(sol.proper_time_reversal(f))}
        half = NTAU // 2
        for n, w in after.items():
            assert abs(w - before[-n if n != -half else n]) < 1e-10
        t = 2.5
        for nk, nq, branch in [(3, 2, 1), (-1, 5, -1), (0, -3, 1), (7, 0, -1)]:
            mode = sol.make_plane_wave(NX, NTAU, LX, LTAU, nk * DK, nq * DKAPPA, branch)
            flipped = sol.proper_time_reversal(mode)
            phase = np.exp(-1j * branch * np.hypot(nk * DK, nq * DKAPPA) * t)
            assert _gap(sol.evolve(flipped, t), flipped * phase) < 1e-10
        g = sol.proper_time_reversal(f)
        e_f = f.inner(sol.apply_hamiltonian(f)).real
        e_g = g.inner(sol.apply_hamiltonian(g)).real
        assert abs(e_f - e_g) < 1e-10


def test_11_uncertainty(criterion):
    with criterion(11, "Delta tau * Delta kappa >= 1/2 (1e3 fields), Gaussian = 1/2", 30.0):
        rng = SplitMix64(SEED + 11)
        worst = min(sol.uncertainty_check(random_uncertainty_field(rng, NTAU, LTAU)).product for _ in range(1000))
        assert worst >= 0.5 - 1e-6, worst
        tau = (np.arange(NTAU) - NTAU // 2) * LTAU / NTAU
        gauss = sol.Field.from_profiles(np.ones(4), np.exp(-tau**2 / 2 + 1j * DKAPPA * tau), [1, 0, 0, 0], 1.0, LTAU)
        assert abs(sol.uncertainty_check(gauss).product - 0.5) < 1e-3


def test_12_classical_layer(criterion):
    with criterion(12, "timeline matches t/gamma at second order; quadrant mapping", 5.0):
        for branch in (1, -1):
            tl = kin.integrate_timeline(lambda _: (0.6, 0, 0), np.linspace(0, 10, 101), branch)
            assert abs(tl.tau[-1] - branch * 10 / kin.gamma((0.6, 0, 0))) < 1e-12
        # hyperbolic motion: v = t / sqrt(1 + t^2), so dtau/dt = 1/gamma(t) and tau = asinh(t)
        errs = []
        for n in (40, 80, 160):
            t = np.linspace(0, 3, n + 1)
            tl = kin.integrate_timeline(lambda s: (s / np.hypot(1, s), 0, 0), t)
            errs.append(abs(tl.tau[-1] - np.arcsinh(3.0)))
        for a, b in zip(errs, errs[1:]):
            assert abs(a / b - 4) <= 0.5, errs
        expected = {np.pi / 4: ((1, 1), "spin-up particle"),
                    -np.pi / 4: ((1, -1), "spin-down particle"),
                    3 * np.pi / 4: ((-1, 1), "spin-up antiparticle"),
                    -3 * np.pi / 4: ((-1, -1), "spin-down antiparticle")}
        for phi, (signs, label) in expected.items():
            got = kin.classify(kin.KinematicState(phi, (0, 0, 1)))
            assert got == signs and kin.SPECIES[got] == label
