"""Exception hierarchy shared across the toolkit.

Error categories map to CLI exit codes: configuration problems exit with 2,
numerical failures (conditioning, spectral floors) exit with 3.
"""


class DunklkitError(Exception):
    """Base class for all toolkit errors."""


class InputError(DunklkitError):
    """Invalid argument values (dimension mismatch, bad ranges)."""


class ConfigError(DunklkitError):
    """Malformed or inconsistent run configuration."""


class CapabilityError(DunklkitError):
    """Requested operation is outside the supported scope."""


class RangeError(DunklkitError):
    """Argument outside the validated numerical range of an algorithm."""


class NumericalError(DunklkitError):
    """Numerical failure; message names the originating module."""

    def __init__(self, module: str, message: str):
        self.module = module
        super().__init__(f"{module}: {message}")


class IllPosedError(NumericalError):
    """Discrete problem violates a well-posedness floor (e.g. spectral gap)."""
