"""Scenario configuration: flat ``key = value`` files plus flag overrides."""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Mapping

OUT_ENV = "TAUSPINOR_OUT"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str = "timeline"
    nx: int = 256
    ntau: int = 64
    lx: float = 64.0
    ltau: float = 16.0
    k0: float = math.pi / 8  # 2*pi*4/lx
    kappa0: float = math.pi / 4  # 2*pi*2/ltau
    sigma_x: float = 4.0
    sigma_tau: float = 1.0
    x0: float = 0.0
    branch: int = 1
    helicity: int = 1
    velocity: float = 0.6
    t_final: float = 10.0
    n_snapshots: int = 5
    out_dir: str = "tauspinor_out"
    seed: int = 0
    tolerance: float | None = None

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


KEYS = {f.name: f for f in fields(ScenarioConfig)}


def _convert(key: str, raw: Any) -> Any:
    default = KEYS[key].default
    if isinstance(raw, str):
        raw = raw.strip()
    try:
        if key == "tolerance":
            return None if raw in (None, "", "none", "None") else float(raw)
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: cannot parse {raw!r}") from None
    return str(raw)


def read_key_values(path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, str] = {}
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key] = value
    return values


def _on_grid(value: float, length: float, n: int) -> bool:
    q = value * length / (2 * math.pi)
    return abs(q - round(q)) <= 1e-9 * max(1.0, abs(q)) and -n // 2 <= round(q) < n // 2


def validate(cfg: ScenarioConfig) -> ScenarioConfig:
    for name in ("nx", "ntau"):
        n = getattr(cfg, name)
        if n < 4 or n & (n - 1):
            raise ConfigError(f"{name}: grid size must be a power of two >= 4, got {n}")
    for name in ("lx", "ltau", "sigma_x", "sigma_tau"):
        if not getattr(cfg, name) > 0:
            raise ConfigError(f"{name}: must be positive")
    if cfg.t_final < 0:
        raise ConfigError("t_final: must be >= 0")
    if cfg.n_snapshots < 1:
        raise ConfigError("n_snapshots: must be >= 1")
    for name in ("branch", "helicity"):
        if getattr(cfg, name) not in (1, -1):
            raise ConfigError(f"{name}: must be +1 or -1")
    if not abs(cfg.velocity) < 1:
        raise ConfigError("velocity: speed must be below 1")
    if not _on_grid(cfg.k0, cfg.lx, cfg.nx):
        raise ConfigError(f"k0: wavenumber {cfg.k0!r} is not grid-compatible (2*pi*n/lx)")
    if not _on_grid(cfg.kappa0, cfg.ltau, cfg.ntau):
        raise ConfigError(f"kappa0: wavenumber {cfg.kappa0!r} is not grid-compatible (2*pi*n/ltau)")
    if cfg.seed < 0:
        raise ConfigError("seed: must be an unsigned integer")
    if cfg.tolerance is not None and cfg.tolerance < 0:
        raise ConfigError("tolerance: must be >= 0")
    return cfg


def parse_config(path=None, overrides: Mapping[str, Any] | None = None, env: Mapping[str, str] | None = None) -> ScenarioConfig:
    """Defaults < config file < $TAUSPINOR_OUT (out_dir only) < explicit overrides."""
    values: dict[str, Any] = {}
    if path is not None:
        values.update(read_key_values(path))
    if env and env.get(OUT_ENV):
        values["out_dir"] = env[OUT_ENV]
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    for key in values:
        if key not in KEYS:
            raise ConfigError(f"unknown config key: {key!r}")
    return validate(ScenarioConfig(**{k: _convert(k, v) for k, v in values.items()}))
