"""Error taxonomy for the formal-calculus engine.

Every failure mode is loud and specific; in particular, reading a series
coefficient outside its known window raises InsufficientWindow instead of
silently returning zero.
"""


class FockcalcError(Exception):
    """Base class for all engine errors."""


class InsufficientWindow(FockcalcError):
    """A coefficient outside the known window was requested; recompute with
    a larger horizon."""


class NoMatch(FockcalcError):
    """A series is not the expansion of any rational form within the given
    pole/degree bounds."""


class KindError(FockcalcError):
    """An operation received a series of the wrong truncation kind."""


class UnsupportedWeight(FockcalcError):
    """An operation requiring an integer L(0)-weight received a vector whose
    weight is not an integer."""


class NonIntegerMonodromy(FockcalcError):
    """An intertwiner type with non-integer pairing exponent was requested;
    this engine supports only integer monodromy."""


class ParseError(FockcalcError):
    """A literal failed to parse; carries a position."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None
                         else f"{message} (at position {position})")
        self.message = message
        self.position = position


class ConfigError(FockcalcError):
    """A suite configuration violates its invariants."""
