"""Exception types shared across the toolkit.

Argument-level misuse (bad index, negative tolerance, ...) raises plain
``ValueError``; the classes below mark failures that originate in data or
physics rather than in the call itself, so batch drivers can tell them apart.
"""


class TransduceError(Exception):
    """Base class for data, range, and unit failures raised by this package."""


class UnitError(TransduceError):
    """A quantity composition produced the wrong physical dimension."""


class RangeError(TransduceError):
    """A wavelength or parameter fell outside a declared validity interval."""

    def __init__(self, message: str, lo: float | None = None, hi: float | None = None):
        super().__init__(message)
        self.lo = lo
        self.hi = hi


class DataError(TransduceError):
    """A required entry (tensor element, sound speed, material) is missing."""


class SingularityError(TransduceError):
    """An estimation formula is singular for the given inputs."""


class MaterialFileError(TransduceError):
    """A material database file failed to parse or validate."""
