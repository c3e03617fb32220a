"""Exception types shared by every module."""


class RoughError(Exception):
    """Base class for all errors raised by roughcat."""


class InputError(RoughError, ValueError):
    """Malformed input: unknown identifiers, universe mismatch, bad files."""


class CapacityError(RoughError):
    """An operation would exceed one of the documented size thresholds."""


class DomainError(RoughError):
    """An operand does not belong to the category the operation requires,
    e.g. a non-rough operator handed to a functor."""


class ConsistencyError(RoughError, AssertionError):
    """An internal cross-check disagreed. Indicates a bug, never bad input."""
