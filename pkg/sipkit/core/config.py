"""Run configuration dataclass and application constants."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Any, Mapping


class ConfigError(ValueError):
    """Raised when a run configuration is out of range."""


# Application-wide constants
DEFAULT_ALPHA = 2
DEFAULT_DEGREE = 1
DEFAULT_SEED = 0
DEFAULT_BLOCKS = 20
DEFAULT_SAMPLES = 500
DEFAULT_FORMAT = "text"
DEFAULT_WORKERS = 1
DEFAULT_CLOPEN_DELTA = "w^4"

# Campaign sizes used when --instances is not given
DEFAULT_ORDINAL_LAW_INSTANCES = 10_000
DEFAULT_CLASSIFIER_INSTANCES = 1_000
DEFAULT_QUOTIENT_INSTANCES = 500
DEFAULT_BUILD_HOMEO_INSTANCES = 500
DEFAULT_COFINAL_INSTANCES = 200
DEFAULT_COCYCLE_INSTANCES = 200
DEFAULT_CONJUGATOR_INSTANCES = 50
DEFAULT_CONJUGATOR_BOUND = 40
DEFAULT_ZONE_INSTANCES = 50
DEFAULT_CERTIFICATE_INSTANCES = 25
DEFAULT_CERTIFICATE_BOUND = 30
DEFAULT_CERTIFICATE_SAMPLES = 1_000
DEFAULT_PI_INSTANCES = 200
DEFAULT_PI_BOUND = 50

FORMATS = ("text", "json")
MAX_SEED = 2**64


@dataclass(frozen=True)
class RunConfig:
    """Parameters shared by every verification campaign."""

    alpha: int = DEFAULT_ALPHA
    degree: int = DEFAULT_DEGREE
    seed: int = DEFAULT_SEED
    blocks: int | None = None
    samples: int | None = None
    format: str = DEFAULT_FORMAT
    workers: int = DEFAULT_WORKERS
    instances: int | None = None

    def validate(self) -> "RunConfig":
        """Return self, or raise ConfigError naming the first bad field."""
        for name in ("alpha", "degree", "blocks", "samples", "workers"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"{name} must be at least 1, got {value}")
        if not 0 <= self.seed < MAX_SEED:
            raise ConfigError(f"seed must be a 64-bit natural number, got {self.seed}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")
        if self.instances is not None and self.instances < 1:
            raise ConfigError(f"instances must be at least 1, got {self.instances}")
        return self

    def count(self, default: int) -> int:
        """Instance count for a campaign whose acceptance size is default."""
        return self.instances if self.instances is not None else default

    def bound(self, default: int = DEFAULT_BLOCKS) -> int:
        """Highest block index to check, or default when --blocks is not given."""
        return self.blocks if self.blocks is not None else default

    def sample_count(self, default: int = DEFAULT_SAMPLES) -> int:
        """Random sample points per instance."""
        return self.samples if self.samples is not None else default

    @classmethod
    def layered(cls, defaults: Mapping[str, Any], overrides: Mapping[str, Any]) -> "RunConfig":
        """Constants, then file defaults, then explicit flags (None means not given)."""
        known = {f.name for f in fields(cls)}
        config = cls()
        from_file = {k: v for k, v in defaults.items() if k in known}
        from_flags = {k: v for k, v in overrides.items() if k in known and v is not None}
        return replace(replace(config, **from_file), **from_flags).validate()
