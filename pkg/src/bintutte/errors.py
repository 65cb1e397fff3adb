"""Exception types shared across the package.

Each class maps to one CLI exit code, see :mod:`bintutte.cli`.
"""


class InputError(ValueError):
    """Malformed or inconsistent input (bad index, violated precondition)."""


class ParameterError(ValueError):
    """A parameter outside the supported range (q = 0, lambda = 0, ...)."""


class SizeError(RuntimeError):
    """An enumeration would exceed its configured budget."""


class SynthesisError(RuntimeError):
    """No gadget plan was found within the size budget."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
