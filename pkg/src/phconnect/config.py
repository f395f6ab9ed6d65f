"""
Configuration management for phconnect.

Process-level defaults come from environment variables (``PHCONNECT_*``) via
Pydantic Settings. Per-run configuration is a nested, strictly validated
model that can be loaded from a JSON file and overridden by CLI flags; the
fully resolved run configuration is written next to every run's outputs.
"""

import json
from pathlib import Path
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .exceptions import DataError
from .geometry.models import Norm
from .neural.models import TrainConfig


class Settings(BaseSettings):
    """Process settings with environment variable support."""

    threads: int = Field(default=1, ge=1, description="Default worker thread count")
    log_level: str = Field(default="WARNING", description="Logging level")
    log_json: bool = Field(default=False, description="Render logs as JSON lines")
    tie_tolerance: float = Field(
        default=1e-12, ge=0.0, description="Absolute tolerance for distance ties"
    )
    default_norm: Norm = Field(default=Norm.L1, description="Default p-norm")

    model_config = SettingsConfigDict(
        env_prefix="PHCONNECT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get the process settings."""
    return settings


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class GeometrySection(_Section):
    norm: Norm = Field(default=Norm.L1, description="p-norm for distances")
    header: bool = Field(default=False, description="Skip one header line in CSVs")
    tie_tolerance: float = Field(default=1e-12, ge=0.0)


class LossSection(_Section):
    eta: float = Field(default=2.0, gt=0.0, description="Connectivity target")


class ToySection(_Section):
    samples: int = Field(default=1500, ge=2)
    clusters: int = Field(default=3, ge=1)
    hidden_width: int = Field(default=20, ge=1)
    evaluation_batches: int = Field(default=3000, ge=1)
    evaluation_batch_size: int = Field(default=50, ge=2)
    dump_epochs: List[int] = Field(default_factory=lambda: [0, 20, 60])

    @field_validator("dump_epochs", mode="before")
    @classmethod
    def parse_dump_epochs(cls, v: Any) -> Any:
        """Parse comma-separated epoch string into list."""
        if isinstance(v, str):
            return [int(item.strip()) for item in v.split(",") if item.strip()]
        return v


class OneClassSection(_Section):
    m: int = Field(default=120, ge=1, description="Training samples per class")
    runs: int = Field(default=5, ge=1, description="Independent sample draws")
    eta: Optional[float] = Field(default=None, gt=0.0)


class AnalysisSection(_Section):
    alpha: float = Field(default=1.8, gt=0.0)
    beta: float = Field(default=2.2, gt=0.0)
    eta: float = Field(default=2.0, gt=0.0)
    eps: float = Field(default=2.0, gt=0.0)
    n: int = Field(default=10, ge=1)
    b: int = Field(default=100, ge=1)
    m: int = Field(default=5, ge=2)
    trials: int = Field(default=1000, ge=0)


class BenchSection(_Section):
    sizes: List[int] = Field(default_factory=lambda: [32, 64, 128])
    dimension: int = Field(default=10, ge=1)
    repetitions: int = Field(default=3, ge=0)

    @field_validator("sizes", mode="before")
    @classmethod
    def parse_sizes(cls, v: Any) -> Any:
        """Parse comma-separated size string into list."""
        if isinstance(v, str):
            return [int(item.strip()) for item in v.split(",") if item.strip()]
        return v


class RunConfig(_Section):
    """Fully resolved configuration of one CLI run."""

    seed: int = Field(default=0, ge=0)
    threads: Optional[int] = Field(default=None, ge=1)
    out_dir: Optional[Path] = None
    geometry: GeometrySection = Field(default_factory=GeometrySection)
    loss: LossSection = Field(default_factory=LossSection)
    train: TrainConfig = Field(default_factory=TrainConfig)
    toy: ToySection = Field(default_factory=ToySection)
    oneclass: OneClassSection = Field(default_factory=OneClassSection)
    analysis: AnalysisSection = Field(default_factory=AnalysisSection)
    bench: BenchSection = Field(default_factory=BenchSection)

    def with_overrides(self, section: Optional[str] = None, **values: Any) -> "RunConfig":
        """Return a validated copy with non-None ``values`` applied.

        With ``section`` the values go into that nested section, otherwise
        they replace top-level fields. Fields never set keep counting as
        unset, so callers can tell file and flag values from defaults.
        """
        updates = {key: value for key, value in values.items() if value is not None}
        if not updates:
            return self
        data = self.model_dump(by_alias=True, exclude_unset=True)
        target = data.setdefault(section, {}) if section else data
        target.update(updates)
        return RunConfig.model_validate(data)

    def resolved_threads(self) -> int:
        """Thread count from the run config, falling back to the settings."""
        return self.threads if self.threads is not None else get_settings().threads


def load_run_config(path: Optional[Path]) -> RunConfig:
    """Load and validate a JSON run configuration; ``None`` gives defaults."""
    if path is None:
        return RunConfig()
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DataError(f"Cannot read config file {path}: {e}") from e
    try:
        return RunConfig.model_validate_json(raw)
    except ValidationError as e:
        raise DataError(f"Invalid config file {path}: {e}") from e


def write_resolved_config(config: RunConfig, directory: Path) -> Path:
    """Write ``config.json`` into ``directory`` and return its path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    target = directory / "config.json"
    payload = config.model_dump(mode="json", by_alias=True)
    target.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return target
