"""Run configuration shared by the CLI and the experiment drivers."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_PREFIX = "HECKEROOT_"


@dataclass(frozen=True)
class RunConfig:
    precision: int = 30
    norm_bound: int = 10**5
    factor_rho_iterations: int = 200_000
    point_count_cap: int = 10**6
    out: str | None = None
    format: str = "json"
    threads: int = 1
    seed: int = 0
    include_unit_Q: bool = True

    def __post_init__(self):
        if self.precision < 15:
            raise ValueError("precision must be at least 15 digits")
        for name in ("norm_bound", "factor_rho_iterations", "point_count_cap", "threads"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")

    @classmethod
    def from_env(cls, environ=None, **overrides) -> RunConfig:
        """Defaults, then HECKEROOT_* environment variables, then explicit overrides."""
        environ = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            if f.type in ("int", int):
                values[f.name] = int(raw)
            elif f.type in ("bool", bool):
                values[f.name] = raw.strip().lower() in ("1", "true", "yes", "on")
            else:
                values[f.name] = raw
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_(self, **kw) -> RunConfig:
        return replace(self, **kw)
