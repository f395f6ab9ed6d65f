"""
Shared fixtures and Hypothesis profiles for the phconnect test suite.
"""

import os
from pathlib import Path
from typing import Callable, List, Sequence

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from phconnect.cli import dispatch
from phconnect.geometry import Norm, PointCloud
from phconnect.geometry import io as geometry_io

settings.register_profile(
    "default",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile(
    "ci",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for reproducible randomized tests."""
    return np.random.default_rng(20240607)


@pytest.fixture
def path_cloud() -> PointCloud:
    """1-D points 0, 1, 3 under L1: merges at 1 via {0,1} and 2 via {1,2}."""
    return PointCloud.from_points([0.0, 1.0, 3.0], Norm.L1)


@pytest.fixture
def two_point_cloud() -> PointCloud:
    return PointCloud.from_points([0.0, 1.0], Norm.L1)


@pytest.fixture
def write_csv(tmp_path: Path) -> Callable[[str, Sequence[Sequence[float]]], Path]:
    """Write rows as a headerless CSV under ``tmp_path``."""

    def _write(name: str, rows: Sequence[Sequence[float]]) -> Path:
        return geometry_io.write_point_cloud(tmp_path / name, np.asarray(rows, dtype=np.float64))

    return _write


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture) -> Callable[[List[str]], "CliResult"]:
    """Run ``dispatch`` and capture its output."""

    def _run(argv: List[str]) -> CliResult:
        capsys.readouterr()
        code = dispatch(argv)
        captured = capsys.readouterr()
        return CliResult(code, captured.out, captured.err)

    return _run


class CliResult:
    def __init__(self, exit_code: int, stdout: str, stderr: str):
        self.exit_code = exit_code
        self.stdout = stdout
        self.stderr = stderr
