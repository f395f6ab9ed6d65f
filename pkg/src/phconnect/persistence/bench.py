"""
Timing comparison of the persistence engines on Gaussian clouds.
"""

import time
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd
import structlog

from ..exceptions import EngineMismatchError
from ..filtration import build_vr
from ..geometry import Norm, PointCloud
from .barcode import barcode_from_reduction
from .matrix import ReductionMatrix
from .models import Engine
from .reduction import reduce_parallel, reduce_standard
from .unionfind import persistence_unionfind

logger = structlog.get_logger(__name__)

BENCH_COLUMNS = ["size", "dimension", "engine", "repetitions", "mean_seconds", "mean_iterations"]


def bench_reduction(
    sizes: Sequence[int],
    dimension: int,
    repetitions: int,
    seed: int = 0,
    threads: int = 1,
    norm: Norm = Norm.L2,
) -> pd.DataFrame:
    """
    Mean wall time per engine and cloud size over standard-normal clouds.

    Every trial checks that the three engines produce the same pairing.

    Raises:
        EngineMismatchError: If two engines disagree on any trial
    """
    rows: List[Dict[str, object]] = []
    if repetitions <= 0:
        return pd.DataFrame(columns=BENCH_COLUMNS)

    rng = np.random.default_rng(seed)
    for size in sizes:
        timings: Dict[Engine, List[float]] = {engine: [] for engine in Engine}
        iterations: List[int] = []
        for trial in range(repetitions):
            cloud = PointCloud(rng.standard_normal((size, dimension)), norm)
            complex_ = build_vr(cloud)
            matrix = ReductionMatrix.from_complex(complex_)

            start = time.perf_counter()
            by_unionfind = persistence_unionfind(complex_)
            timings[Engine.UNIONFIND].append(time.perf_counter() - start)

            start = time.perf_counter()
            by_standard = barcode_from_reduction(complex_, reduce_standard(matrix))
            timings[Engine.STANDARD].append(time.perf_counter() - start)

            start = time.perf_counter()
            parallel = reduce_parallel(matrix, threads=threads)
            by_parallel = barcode_from_reduction(complex_, parallel.matrix)
            timings[Engine.PARALLEL].append(time.perf_counter() - start)
            iterations.append(parallel.iterations)
            logger.debug(
                "bench_trial", size=size, trial=trial, **parallel.stats.model_dump(mode="json")
            )

            reference = by_unionfind.pairing()
            if by_standard.pairing() != reference or by_parallel.pairing() != reference:
                raise EngineMismatchError(
                    f"Persistence engines disagree on trial {trial} with b={size}"
                )

        for engine in Engine:
            rows.append(
                {
                    "size": size,
                    "dimension": dimension,
                    "engine": engine.value,
                    "repetitions": repetitions,
                    "mean_seconds": float(np.mean(timings[engine])),
                    "mean_iterations": (
                        float(np.mean(iterations)) if engine is Engine.PARALLEL else 0.0
                    ),
                }
            )
        logger.info(
            "bench_size_finished",
            size=size,
            mean_parallel_iterations=float(np.mean(iterations)),
        )

    return pd.DataFrame(rows, columns=BENCH_COLUMNS)
