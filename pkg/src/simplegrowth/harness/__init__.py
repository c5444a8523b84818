"""Seeded experiment batteries, report emission and re-verification."""

from .config import DEFAULT_BATTERY, SUITES, ConfigError, SuiteConfig
from .run import RunReport, emit, run_suite
from .sampling import instance_rng, sample_subset
from .verify import reverify_file, reverify_record

__all__ = [
    "DEFAULT_BATTERY",
    "SUITES",
    "ConfigError",
    "RunReport",
    "SuiteConfig",
    "emit",
    "instance_rng",
    "reverify_file",
    "reverify_record",
    "run_suite",
    "sample_subset",
]
