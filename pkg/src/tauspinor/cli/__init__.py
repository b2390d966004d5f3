"""Command-line front end: ``verify``, ``run <scenario>``, ``list-scenarios``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .config import KEYS, ConfigError, ScenarioConfig, parse_config
from .scenarios import SCENARIOS
from .verify import VerificationReport, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

__all__ = ["main", "run_scenario", "run_verify", "parse_config", "ScenarioConfig", "VerificationReport"]


def run_scenario(cfg: ScenarioConfig) -> Path:
    """Run ``cfg.scenario`` into ``cfg.out_dir``; returns the manifest path."""
    if cfg.scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {cfg.scenario!r}; choose from {sorted(SCENARIOS)}")
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files, checks = SCENARIOS[cfg.scenario](cfg, out)
    manifest = out / "manifest.json"
    payload = {
        "scenario": cfg.scenario,
        "config": cfg.to_dict(),
        "files": [p.name for p in files],
        "checks": checks,
    }
    manifest.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return manifest


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key = value config file")
    for name, f in KEYS.items():
        if name == "scenario":
            continue
        common.add_argument(f"--{name.replace('_', '-')}", dest=name, default=None, metavar=name.upper(),
                            help=f"default: {f.default}")

    parser = argparse.ArgumentParser(prog="tauspinor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run every invariant check, write report.json")
    v.add_argument("--report", type=Path, default=None, help="report path (default: OUT_DIR/report.json)")
    r = sub.add_parser("run", parents=[common], help="emit data for one scenario")
    r.add_argument("scenario_name", metavar="scenario", help="one of: " + ", ".join(SCENARIOS))
    sub.add_parser("list-scenarios", help="print available scenarios")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "list-scenarios":
        for name, fn in SCENARIOS.items():
            print(f"{name:16s} {(fn.__doc__ or '').strip().splitlines()[0] if fn.__doc__ else ''}".rstrip())
        return EXIT_OK

    overrides = {k: getattr(args, k) for k in KEYS if k != "scenario"}
    if args.command == "run":
        overrides["scenario"] = args.scenario_name
    try:
        cfg = parse_config(args.config, overrides, os.environ)
        if args.command == "run" and cfg.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {cfg.scenario!r}; choose from {sorted(SCENARIOS)}")
    except (ConfigError, FileNotFoundError) as exc:
        print(f"tauspinor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "run":
            manifest = run_scenario(cfg)
            print(f"wrote {manifest}")
            return EXIT_OK
        report = run_verify(cfg)
        path = args.report or Path(cfg.out_dir) / "report.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report.to_json())
    except OSError as exc:
        print(f"tauspinor: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO

    for row in report.rows:
        flag = "PASS" if row.passed else "FAIL"
        print(f"{flag} {row.id:38s} residual={row.residual:.3e} tol={row.tolerance:.1e}")
    print(f"{report.passed}/{len(report.rows)} claims passed; report: {path}")
    return EXIT_OK if report.all_passed else EXIT_FAIL
