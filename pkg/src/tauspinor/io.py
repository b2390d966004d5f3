"""Plain-text export/import: timelines, field snapshots, spectra, matrix dumps."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .kinematics import Timeline
from .solver import Field, SpectrumRow
from .spinor import from_pairs, to_pairs

TIMELINE_HEADER = ["t", "tau", "x", "y", "z"]
FIELD_HEADER = ["ix", "itau", "c0re", "c0im", "c1re", "c1im", "c2re", "c2im", "c3re", "c3im"]
SPECTRUM_HEADER = ["kappa", "weight"]


def fmt(value: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(value), ".17g")


def write_timeline_csv(timeline: Timeline, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TIMELINE_HEADER)
        for t, tau, x in zip(timeline.t, timeline.tau, timeline.x):
            w.writerow([fmt(t), fmt(tau), *(fmt(c) for c in x)])
    return path


def read_timeline_csv(path) -> Timeline:
    rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return Timeline(rows[:, 0], rows[:, 1], rows[:, 2:5])


def write_field_snapshot(field: Field, path) -> tuple[Path, Path]:
    """Write ``<path>.csv`` plus a ``<path>.json`` sidecar with the grid metadata."""
    path = Path(path)
    csv_path, json_path = path.with_suffix(".csv"), path.with_suffix(".json")
    with csv_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(FIELD_HEADER)
        for ix in range(field.nx):
            for it in range(field.ntau):
                amps = field.data[ix, it]
                row = [str(ix), str(it)]
                for a in amps:
                    row += [fmt(a.real), fmt(a.imag)]
                w.writerow(row)
    meta = {"nx": field.nx, "ntau": field.ntau, "lx": field.lx, "ltau": field.ltau, "t": field.t}
    json_path.write_text(json.dumps(meta, indent=2) + "\n")
    return csv_path, json_path


def read_field_snapshot(path) -> Field:
    path = Path(path)
    meta = json.loads(path.with_suffix(".json").read_text())
    rows = np.loadtxt(path.with_suffix(".csv"), delimiter=",", skiprows=1, ndmin=2)
    data = np.zeros((meta["nx"], meta["ntau"], 4), complex)
    ix, it = rows[:, 0].astype(int), rows[:, 1].astype(int)
    data[ix, it] = rows[:, 2::2] + 1j * rows[:, 3::2]
    return Field(meta["nx"], meta["ntau"], meta["lx"], meta["ltau"], data, meta["t"])


def write_spectrum_csv(rows: list[SpectrumRow], path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SPECTRUM_HEADER)
        for r in rows:
            w.writerow([fmt(r.kappa), fmt(r.weight)])
    return path


def read_spectrum_csv(path) -> list[SpectrumRow]:
    rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return [SpectrumRow(float(k), float(w)) for k, w in rows]


def dump_matrix(a: np.ndarray) -> str:
    """JSON array of [re, im] pairs, row-major."""
    return json.dumps(to_pairs(a))


def load_matrix(text: str) -> np.ndarray:
    return from_pairs(json.loads(text))
