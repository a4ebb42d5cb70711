"""Exception hierarchy shared by every module of the package."""


class TightCycleError(Exception):
    """Base class for all errors raised by :mod:`tightcycles`."""


class InvalidArgument(TightCycleError, ValueError):
    """An argument violates a documented precondition."""


class SizeLimitError(TightCycleError):
    """The instance is larger than an exact routine is allowed to handle."""


class BudgetExceeded(SizeLimitError):
    """A bounded search ran out of nodes or time before deciding."""


class MalformedCycle(InvalidArgument):
    """A vertex sequence cannot describe a cycle (repeats, bad length)."""


class InvalidCycle(TightCycleError):
    """A well-formed sequence has a window that is not a usable edge.

    ``window`` is the offending k-tuple in sequence order.
    """

    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window


class PreconditionViolation(TightCycleError):
    """A lifting precondition fails; ``location`` is ``(s, i)`` (1-based)."""

    def __init__(self, message, location=None, condition=None):
        super().__init__(message)
        self.location = location
        self.condition = condition


class HypothesisViolation(TightCycleError):
    """A quantitative hypothesis of a lemma does not hold on the input."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AbsorptionError(TightCycleError):
    """A stage of the absorption pipeline could not be completed.

    This is a soft failure: callers are expected to fall back.
    """

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class TransversalStuck(TightCycleError):
    """The greedy transversal found every candidate of a block forbidden."""

    def __init__(self, message, block=None):
        super().__init__(message)
        self.block = block


class InternalError(TightCycleError, AssertionError):
    """A state that the algorithms guarantee to be unreachable was reached."""


class ParseError(InvalidArgument):
    """Malformed instance, certificate or auxiliary file."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{position}: {message}"
        super().__init__(message)
        self.position = position
