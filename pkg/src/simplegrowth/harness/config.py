"""Run configuration."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ..groups import parse_spec

SUITES = ("inequalities", "growth", "decomposition", "normal", "gowers")

DEFAULT_BATTERY = (
    "Alt(5)",
    "Alt(6)",
    "PSL2(7)",
    "PSL2(8)",
    "PSL2(9)",
    "PSL2(11)",
    "PSL2(13)",
    "PSL3(2)",
    "Cyclic(12)",
)

DEFAULT_SAMPLES = {
    "inequalities": 200,
    "growth": 200,
    "bigset": 100,
    "decomposition": 50,
    "normal": 200,
    "gowers": 1000,
}

WORKERS_ENV = "SIMPLEGROWTH_WORKERS"


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    groups: list[str] = field(default_factory=lambda: list(DEFAULT_BATTERY))
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    seed: int = 42
    samples: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_SAMPLES))
    # inclusive size range for random sets in the inequality suite
    set_size: tuple[int, int] = (2, 24)
    # inclusive size range for big-set and decomposition inputs
    small_set_size: tuple[int, int] = (2, 8)
    subset_cap: int = 14
    normal_epsilon: str = "1/10"
    normal_b: int = 6
    shalev_delta: str = "1/3"
    shalev2_delta: str = "1/4"
    workers: int = 1
    out: str | None = None

    def __post_init__(self):
        self.set_size = tuple(self.set_size)
        self.small_set_size = tuple(self.small_set_size)
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ConfigError(f"unknown suites: {sorted(unknown)}")
        for g in self.groups:
            try:
                parse_spec(g)
            except ValueError as exc:
                raise ConfigError(f"bad group spec {g!r}: {exc}") from exc
        merged = dict(DEFAULT_SAMPLES)
        merged.update(self.samples)
        self.samples = merged
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")

    def resolved_workers(self) -> int:
        env = os.environ.get(WORKERS_ENV)
        return max(1, int(env)) if env else max(1, self.workers)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["set_size"] = list(self.set_size)
        d["small_set_size"] = list(self.small_set_size)
        # worker count and output path do not affect results
        d.pop("workers")
        d.pop("out")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)

    @classmethod
    def load(cls, path: str | Path) -> "SuiteConfig":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        return cls.from_dict(data)
