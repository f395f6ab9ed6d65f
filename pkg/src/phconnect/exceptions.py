"""
Exception hierarchy for phconnect.

Library code raises these instead of bare ``ValueError``/``RuntimeError`` so
the CLI can map failures onto exit codes.
"""


class PhConnectError(Exception):
    """Base class for all phconnect errors."""


class InvalidInputError(PhConnectError, ValueError):
    """An operation was called with arguments violating its preconditions."""


class DataError(PhConnectError):
    """An input file is missing, unreadable or malformed."""


class CombinatorialGuardError(InvalidInputError):
    """An exhaustive enumeration would exceed the configured size guard."""


class EngineMismatchError(PhConnectError):
    """Two persistence engines produced different pairings for one input."""


class DistanceTieWarning(UserWarning):
    """Pairwise distances collide where uniqueness is assumed."""
