"""
Closed-form bounds relating batch size, merge distances and dimension.

Bounds are evaluated exactly on the binary values of their float inputs
with :class:`fractions.Fraction`, so integer thresholds never suffer from
rounding right at an integer boundary.
"""

import math
from fractions import Fraction
from typing import Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..exceptions import InvalidInputError
from ..geometry import Norm

Number = Union[int, float, Fraction]


class AnnulusSpec(BaseModel):
    """Closed L1 annulus ``alpha <= |y - z|_1 <= beta`` in ``R^n``."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(gt=0.0)
    beta: float = Field(gt=0.0)
    n: int = Field(ge=1)
    norm: Norm = Norm.L1

    @model_validator(mode="after")
    def check_radii(self) -> "AnnulusSpec":
        if self.alpha > self.beta:
            raise ValueError(f"alpha ({self.alpha}) must not exceed beta ({self.beta})")
        if self.norm is not Norm.L1:
            raise ValueError("Annulus packing bounds hold for the L1 norm only")
        return self


def _positive(**values: Number) -> None:
    for name, value in values.items():
        if not value > 0:
            raise InvalidInputError(f"{name} must be positive, got {value}")


def entropy_bound_exact(spec: AnnulusSpec, eps: Number) -> Fraction:
    """``(2 beta / eps + 1)^n - (2 alpha / eps - 1)^n`` as an exact fraction."""
    _positive(eps=eps)
    alpha, beta, eps = Fraction(spec.alpha), Fraction(spec.beta), Fraction(eps)
    return (2 * beta / eps + 1) ** spec.n - (2 * alpha / eps - 1) ** spec.n


def entropy_bound(spec: AnnulusSpec, eps: Number) -> float:
    """Upper bound on the number of ``eps``-separated points in the annulus."""
    return float(entropy_bound_exact(spec, eps))


def separation_threshold(b: int, alpha: Number, beta: Number, eta: Number, n: int) -> int:
    """
    Smallest ``m`` with ``m - b + 1`` strictly above the entropy bound at ``eta``.

    A set of at least this many points whose every ``b``-subset merges
    within ``[alpha, beta]`` cannot be ``eta``-separated. Equality with the
    bound is not enough.
    """
    _positive(b=b, alpha=alpha, beta=beta, eta=eta, n=n)
    bound = (2 * Fraction(beta) / Fraction(eta) + 1) ** n - (
        2 * Fraction(alpha) / Fraction(eta) - 1
    ) ** n
    return b + math.floor(bound)


def is_provably_unseparated(
    m: int, b: int, alpha: Number, beta: Number, eta: Number, n: int
) -> bool:
    return m >= separation_threshold(b, alpha, beta, eta, n)


def batch_size_condition(alpha: Number, beta: Number, n: int) -> int:
    """Largest batch size ``floor((2 beta / alpha + 1)^n - 1)`` for ``(alpha, beta)``."""
    _positive(alpha=alpha, beta=beta, n=n)
    if alpha > beta:
        raise InvalidInputError(f"alpha ({alpha}) must not exceed beta ({beta})")
    return math.floor((2 * Fraction(beta) / Fraction(alpha) + 1) ** n - 1)
