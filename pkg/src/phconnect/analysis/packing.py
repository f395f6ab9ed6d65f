"""
Brute-force packings of L1 annuli, used as oracles for the entropy bound.

The 1-D packing is exact: the annulus is ``[-beta, -alpha] U [alpha, beta]``
and placing points greedily from the left is optimal. The 2-D packing is a
greedy lower bound over a grid of spacing ``eps / refinement``; all
arithmetic is done on integer grid coordinates.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from ..exceptions import InvalidInputError
from .bounds import Number


@dataclass(frozen=True)
class Packing:
    """Pairwise ``eps``-separated points inside an annulus."""

    points: np.ndarray

    @property
    def count(self) -> int:
        return int(self.points.shape[0])


def _check(alpha: Number, beta: Number, eps: Number) -> None:
    if not (alpha > 0 and beta > 0 and eps > 0):
        raise InvalidInputError("alpha, beta and eps must be positive")
    if alpha > beta:
        raise InvalidInputError(f"alpha ({alpha}) must not exceed beta ({beta})")


def packing_1d_exact(alpha: Number, beta: Number, eps: Number) -> Packing:
    """Maximum ``eps``-separated subset of the 1-D annulus."""
    _check(alpha, beta, eps)
    a, b, e = Fraction(alpha), Fraction(beta), Fraction(eps)
    chosen: List[Fraction] = []
    for low, high in ((-b, -a), (a, b)):
        x = low if not chosen else max(low, chosen[-1] + e)
        while x <= high:
            chosen.append(x)
            x += e
    return Packing(np.asarray([float(x) for x in chosen], dtype=np.float64).reshape(-1, 1))


def packing_2d_greedy(
    alpha: Number, beta: Number, eps: Number, refinement: int = 4
) -> Packing:
    """
    Greedy ``eps``-separated subset of the 2-D L1 annulus.

    Candidates are the grid points ``(eps / refinement) * (u, v)`` inside the
    annulus, visited row by row.
    """
    _check(alpha, beta, eps)
    if refinement < 1:
        raise InvalidInputError(f"refinement must be at least 1, got {refinement}")
    step = Fraction(eps) / refinement
    inner = Fraction(alpha) / step
    outer = Fraction(beta) / step
    radius = math.floor(outer)

    chosen: List[Tuple[int, int]] = []
    for u in range(-radius, radius + 1):
        for v in range(-radius, radius + 1):
            norm = abs(u) + abs(v)
            if norm < inner or norm > outer:
                continue
            if all(abs(u - p) + abs(v - q) >= refinement for p, q in chosen):
                chosen.append((u, v))
    points = np.asarray(chosen, dtype=np.float64).reshape(-1, 2) * float(step)
    return Packing(points)
