"""Data-emitting scenarios. Each writes plot-ready CSVs and returns their paths
plus a dict of checks that ends up in the manifest."""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Callable

import numpy as np

from .. import kinematics as kin
from .. import solver as sol
from ..io import fmt, write_field_snapshot, write_spectrum_csv, write_timeline_csv
from .config import ScenarioConfig

ScenarioResult = tuple[list[Path], dict]


def _write_rows(path: Path, header: list[str], rows) -> Path:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return path


def _packet(cfg: ScenarioConfig, **kw) -> sol.Field:
    args = dict(sigma_x=cfg.sigma_x, kappa0=cfg.kappa0, k0=cfg.k0, x0=cfg.x0,
                branch=cfg.branch, helicity=cfg.helicity)
    args.update(kw)
    return sol.gaussian_packet(cfg.nx, cfg.ntau, cfg.lx, cfg.ltau, **args)


def _times(cfg: ScenarioConfig) -> np.ndarray:
    return np.linspace(0.0, cfg.t_final, cfg.n_snapshots + 1)


def timeline(cfg: ScenarioConfig, out: Path) -> ScenarioResult:
    """Constant-speed worldline for the configured branch, plus the opposite branch."""
    t = np.linspace(0.0, cfg.t_final if cfg.t_final > 0 else 1.0, 1001)
    v = np.tile([cfg.velocity, 0.0, 0.0], (t.size, 1))
    files = [write_timeline_csv(kin.integrate_timeline(v, t, cfg.branch), out / "timeline.csv")]
    files.append(write_timeline_csv(kin.integrate_timeline(v, t, -cfg.branch), out / "timeline_mirror.csv"))
    expected = cfg.branch * t[-1] / kin.gamma((cfg.velocity, 0.0, 0.0))
    return files, {"tau_final_expected": expected}


def quadrants(cfg: ScenarioConfig, out: Path) -> ScenarioResult:
    """Sweep of the kinematic circle with the species label of each point."""
    rows = []
    for phi in np.linspace(-np.pi, np.pi, 73)[1:]:
        st = kin.KinematicState(phi)
        try:
            label = kin.SPECIES[kin.classify(st)]
        except kin.BoundaryError as exc:
            label = str(exc).split(":")[0].split(",")[0]
        rows.append((st.phi, st.r[0], st.r[2], st.tau_dot, st.speed, label))
    path = _write_rows(out / "quadrants.csv", ["phi", "r1", "r3", "tau_dot", "speed", "species"], rows)
    return [path], {}


def _observables(field: sol.Field, times) -> list[tuple]:
    rows = []
    for t in times:
        f = sol.evolve(field, t)
        rows.append((t, f.norm2(), sol.position_mean(f), sol.velocity_mean(f)[0]))
    return rows


def evolution(cfg: ScenarioConfig, out: Path) -> ScenarioResult:
    """Packet snapshots at n_snapshots + 1 times plus norm/position/velocity observables."""
    field = _packet(cfg)
    files = []
    for i, t in enumerate(_times(cfg)):
        files.extend(write_field_snapshot(sol.evolve(field, t), out / f"snapshot_{i:03d}"))
    rows = _observables(field, _times(cfg))
    files.append(_write_rows(out / "observables.csv", ["t", "norm", "x_mean", "alpha1"], rows))
    drift = max(abs(r[1] - rows[0][1]) for r in rows)
    return files, {"norm_drift": drift}


def mass_spectrum(cfg: ScenarioConfig, out: Path) -> ScenarioResult:
    """Non-empty mass-sector weights of the configured packet."""
    field = _packet(cfg)
    total = field.norm2()
    rows = [r for r in sol.mass_spectrum(field) if r.weight > 1e-12 * total]
    return [write_spectrum_csv(rows, out / "spectrum.csv")], {"rows": len(rows)}


def _slope_rows(field: sol.Field, cfg: ScenarioConfig, dt: float = 1e-3):
    rows, worst, wrapped = [], 0.0, False
    for t in np.linspace(0.0, cfg.t_final, max(cfg.n_snapshots, 1) * 10 + 1):
        res = sol.ehrenfest_velocity(field, t, dt)
        rows.append((t, sol.position_mean(sol.evolve(field, t)), res.velocity[0], res.slope))
        worst = max(worst, abs(res.slope - res.velocity[0]))
        wrapped |= res.wrapped
    return rows, {"max_slope_minus_alpha1": worst, "wrapped": wrapped}


def ehrenfest(cfg: ScenarioConfig, out: Path) -> ScenarioResult:
    """d<x>/dt against <alpha_1> for the configured packet."""
    rows, checks = _slope_rows(_packet(cfg), cfg)
    path = _write_rows(out / "ehrenfest.csv", ["t", "x_mean", "alpha1", "slope"], rows)
    return [path], checks


def zitterbewegung(cfg: ScenarioConfig, out: Path) -> ScenarioResult:
    """Same as ehrenfest for an equal mix of both energy branches."""
    field = (_packet(cfg, branch=1) + _packet(cfg, branch=-1)).normalized()
    rows, checks = _slope_rows(field, cfg)
    path = _write_rows(out / "zitterbewegung.csv", ["t", "x_mean", "alpha1", "slope"], rows)
    return [path], checks


def reversal(cfg: ScenarioConfig, out: Path) -> ScenarioResult:
    """Mass spectrum before and after proper-time reversal."""
    field = _packet(cfg)
    flipped = sol.proper_time_reversal(field)
    files = [
        write_spectrum_csv(sol.mass_spectrum(field), out / "spectrum_before.csv"),
        write_spectrum_csv(sol.mass_spectrum(flipped), out / "spectrum_after.csv"),
    ]
    t = cfg.t_final
    gap = np.max(np.abs(sol.evolve(flipped, t).data - sol.proper_time_reversal(sol.evolve(field, t)).data))
    return files, {"evolve_reversal_commutator": float(gap)}


def uncertainty(cfg: ScenarioConfig, out: Path) -> ScenarioResult:
    """Delta tau * Delta kappa for Gaussian tau profiles of increasing width."""
    base = sol.Field.zeros(4, cfg.ntau, 1.0, cfg.ltau)
    rows = []
    for s in np.linspace(2 * base.dtau, cfg.ltau / 12, 12):
        prof = np.exp(-(base.tau**2) / (2 * s * s) + 1j * cfg.kappa0 * base.tau)
        res = sol.uncertainty_check(sol.Field.from_profiles(np.ones(4), prof, [1, 0, 0, 0], 1.0, cfg.ltau))
        rows.append((s, *res))
    path = _write_rows(out / "uncertainty.csv", ["sigma_tau", "delta_tau", "delta_kappa", "product"], rows)
    return [path], {"min_product": min(r[3] for r in rows)}


SCENARIOS: dict[str, Callable[[ScenarioConfig, Path], ScenarioResult]] = {
    "timeline": timeline,
    "quadrants": quadrants,
    "evolution": evolution,
    "mass-spectrum": mass_spectrum,
    "ehrenfest": ehrenfest,
    "zitterbewegung": zitterbewegung,
    "reversal": reversal,
    "uncertainty": uncertainty,
}
