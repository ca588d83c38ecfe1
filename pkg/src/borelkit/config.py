"""Run configuration: dataclass, flat ``key = value`` files, validation."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from typing import Optional

FORMATS = ("json", "jsonl", "csv")
D_CAP = 24
NVARS_CAP = 6


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    # tolerances
    residual_rel: float = 1e-10
    rank_rel: float = 1e-8
    eval_rel: float = 1e-8
    # growth grids; R_max = None means 20 / A
    radii: int = 64
    angles: int = 128
    R_max: Optional[float] = None
    # desk-scale caps
    D_max: int = D_CAP
    deg_max: int = 12
    nvars_max: int = NVARS_CAP
    # output
    output: Optional[str] = None
    format: str = "json"

    GROUPS = {
        "tolerances": ("residual_rel", "rank_rel", "eval_rel"),
        "grid": ("radii", "angles", "R_max"),
        "degree_caps": ("D_max", "deg_max", "nvars_max"),
    }

    def __post_init__(self):
        for name in ("residual_rel", "rank_rel", "eval_rel"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.R_max is not None and not self.R_max > 0:
            raise ConfigError("R_max must be positive")
        if self.radii < 1 or self.angles < 1:
            raise ConfigError("grid sizes must be positive")
        if not 0 <= self.D_max <= D_CAP:
            raise ConfigError(f"D_max must lie in [0, {D_CAP}]")
        if not 1 <= self.nvars_max <= NVARS_CAP:
            raise ConfigError(f"nvars_max must lie in [1, {NVARS_CAP}]")
        if self.deg_max < 1:
            raise ConfigError("deg_max must be positive")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")

    def replace(self, **changes) -> "RunConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        out = {"seed": self.seed}
        for group, names in self.GROUPS.items():
            out[group] = {n: getattr(self, n) for n in names}
        out["output"] = {"path": self.output, "format": self.format}
        return out


_FIELDS = {f.name: f for f in fields(RunConfig)}
_ALIASES = {f"{g}.{n}": n for g, names in RunConfig.GROUPS.items() for n in names}
_ALIASES.update({"output.path": "output", "output.format": "format"})


def _convert(name: str, raw: str):
    if raw.lower() in ("none", ""):
        if name in ("R_max", "output"):
            return None
        raise ConfigError(f"{name} cannot be empty")
    kind = type(getattr(RunConfig, name))
    if name == "R_max":
        kind = float
    elif name == "output":
        kind = str
    try:
        return kind(raw)
    except ValueError:
        raise ConfigError(f"bad value for {name}: {raw!r}") from None


def parse_config_text(text: str, base: Optional[RunConfig] = None) -> RunConfig:
    """Lines ``key = value``; ``#`` starts a comment. Keys are field names or
    their grouped spelling (``tolerances.rank_rel``)."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, raw = (s.strip() for s in line.split("=", 1))
        name = _ALIASES.get(key, key)
        if name not in _FIELDS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[name] = _convert(name, raw)
    base = base or RunConfig()
    return dataclasses.replace(base, **values)


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None


def dump_config(cfg: RunConfig) -> str:
    return "".join(f"{f.name} = {getattr(cfg, f.name)}\n" for f in fields(RunConfig))
