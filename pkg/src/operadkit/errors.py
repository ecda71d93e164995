"""Shared exception types and size caps.

Every construction in this package is an exhaustive finite enumeration, so
hard caps guard against accidentally factorial blow-ups.  Caps can be
overridden per call site or globally through environment variables:

    OPERADKIT_PROFILE_CAP   maximum profile length (default 8)
    OPERADKIT_ARITY_CAP     maximum arity of symmetric-sequence support (default 6)
"""

import os


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(EngineError):
    """A value violated a documented precondition on its shape or membership."""


class CapacityError(EngineError):
    """A construction would exceed the configured profile/arity caps."""


class PreconditionViolation(EngineError):
    """A mathematical precondition (e.g. monomorphy) failed at run time."""


class NotReflexive(InvalidInput):
    """A coequalizer was requested for a pair with no verified common section."""


def _env_cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInput(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise InvalidInput(f"{name} must be positive, got {value}")
    return value


def profile_cap() -> int:
    return _env_cap("OPERADKIT_PROFILE_CAP", 8)


def arity_cap() -> int:
    return _env_cap("OPERADKIT_ARITY_CAP", 6)
