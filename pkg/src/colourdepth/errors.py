"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class ColourDepthError(Exception):
    """Base class for every error raised by this package."""


class InputError(ColourDepthError, ValueError):
    """Malformed or out-of-range input (bad indices, mismatched shapes, parse failures)."""


class PreconditionError(ColourDepthError, ValueError):
    """Input is well-formed but an operation's precondition does not hold."""


class ResourceError(ColourDepthError):
    """A configured budget (bits, samples, attempts) would be exceeded."""


class GenerationError(ColourDepthError):
    """Random generation gave up after exhausting its rejection cap."""

    def __init__(self, message: str, seed: int | None = None):
        super().__init__(message if seed is None else f"{message} (seed={seed})")
        self.seed = seed


class InconsistencyError(ColourDepthError):
    """A result contradicts a proven bound; indicates a bug in a predicate."""
