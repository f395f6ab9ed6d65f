"""
CSV input/output for point clouds, labeled datasets and score lists.

Files hold one row per point, decimal floats, no header unless requested.
Floats are written with 17 significant digits so every file round-trips
exactly through its reader.
"""

from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np
import pandas as pd
import structlog

from ..exceptions import DataError
from .models import Norm, PointCloud

logger = structlog.get_logger(__name__)

FLOAT_FORMAT = "%.17g"

PathLike = Union[str, Path]


def _read_numeric_frame(path: PathLike, header: bool) -> pd.DataFrame:
    path = Path(path)
    if not path.exists():
        raise DataError(f"File not found: {path}")
    try:
        frame = pd.read_csv(
            path,
            header=None,
            skiprows=1 if header else 0,
            skipinitialspace=True,
        )
    except pd.errors.EmptyDataError as e:
        raise DataError(f"File {path} contains no data") from e
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DataError(f"Cannot parse {path}: {e}") from e

    try:
        frame = frame.apply(pd.to_numeric, errors="raise")
    except (TypeError, ValueError) as e:
        raise DataError(f"Non-numeric value in {path}: {e}") from e
    if frame.isna().to_numpy().any():
        raise DataError(f"Missing values or ragged rows in {path}")
    return frame


def read_point_cloud(
    path: PathLike, header: bool = False, norm: Union[Norm, str] = Norm.L1
) -> PointCloud:
    """Read a point cloud CSV (one point per row)."""
    frame = _read_numeric_frame(path, header)
    logger.debug(
        "point_cloud_read",
        path=str(path),
        points=frame.shape[0],
        dimension=frame.shape[1],
    )
    return PointCloud(frame.to_numpy(dtype=np.float64), Norm(norm))


def write_point_cloud(path: PathLike, cloud: Union[PointCloud, np.ndarray]) -> Path:
    """Write a point cloud (or a raw ``(b, n)`` array) as headerless CSV."""
    if isinstance(cloud, PointCloud):
        points = cloud.points
    else:
        points = np.asarray(cloud, dtype=np.float64)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(points).to_csv(path, header=False, index=False, float_format=FLOAT_FORMAT)
    return path


def read_labeled(path: PathLike, header: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """
    Read a labeled dataset whose last column holds integer class labels.

    Returns:
        Tuple of ``(features, labels)``
    """
    frame = _read_numeric_frame(path, header)
    if frame.shape[1] < 2:
        raise DataError(f"Labeled file {path} needs at least one feature and a label column")
    labels = frame.iloc[:, -1].to_numpy()
    if not np.all(np.equal(np.mod(labels, 1), 0)):
        raise DataError(f"Labels in {path} must be integers")
    features = frame.iloc[:, :-1].to_numpy(dtype=np.float64)
    return features, labels.astype(np.int64)


def read_scores(path: PathLike, header: bool = False) -> np.ndarray:
    """Read a one-column score file."""
    frame = _read_numeric_frame(path, header)
    if frame.shape[1] != 1:
        raise DataError(f"Score file {path} must have exactly one column")
    return frame.iloc[:, 0].to_numpy()


def write_scores(path: PathLike, scores: Sequence[float]) -> Path:
    """Write one score per line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame({"score": np.asarray(scores)}).to_csv(
        path, header=False, index=False, float_format=FLOAT_FORMAT
    )
    return path


def write_frame(path: PathLike, frame: pd.DataFrame) -> Path:
    """Write a result table with a header row and exact floats."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path
