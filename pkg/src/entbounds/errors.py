"""Exception hierarchy shared by all modules."""


class EntBoundsError(Exception):
    """Base class for every error raised by this package."""


class StateError(EntBoundsError, ValueError):
    """A matrix or vector failed a quantum-state invariant."""

    invariant = "state"

    def __init__(self, message, magnitude=None):
        super().__init__(message)
        self.magnitude = magnitude


class NotHermitian(StateError):
    invariant = "NotHermitian"


class NotPositive(StateError):
    invariant = "NotPositive"


class TraceNotOne(StateError):
    invariant = "TraceNotOne"


class NotNormalized(StateError):
    invariant = "NotNormalized"


class DimensionMismatch(EntBoundsError, ValueError):
    pass


class RankMismatch(EntBoundsError, ValueError):
    pass


class NumericalBreakdown(EntBoundsError, ArithmeticError):
    """An eigen- or singular-value solver failed to converge."""


class ReconstructionFailure(EntBoundsError, ValueError):
    """A decomposition does not sum to a valid density matrix."""


class ParseError(EntBoundsError, ValueError):
    pass


class ValidationError(EntBoundsError, ValueError):
    """A state file parsed but its contents are not a valid state.

    ``cause`` keeps the underlying :class:`StateError`.
    """

    def __init__(self, path, cause):
        super().__init__(f"{path}: {cause.invariant}: {cause}")
        self.path = path
        self.cause = cause


class ConfigError(EntBoundsError, ValueError):
    pass
