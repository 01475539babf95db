"""Exception hierarchy shared by all qbayes modules."""


class QBayesError(Exception):
    """Base class for every error raised by qbayes."""


class InvalidStateError(QBayesError, ValueError):
    """A matrix or Bloch vector does not describe a valid quantum state."""


class DimensionError(QBayesError, ValueError):
    pass


class CapacityError(QBayesError, ValueError):
    """A tensor-product construction would exceed the configured dimension cap."""


class InvalidArgumentError(QBayesError, ValueError):
    pass


class ImpossibleOutcomeError(QBayesError, ArithmeticError):
    """The requested outcome has (numerically) zero probability."""


class InvalidPriorError(QBayesError, ValueError):
    pass


class NoInteriorSolutionError(QBayesError, ArithmeticError):
    """The maximum-entropy dual diverged; the targets are infeasible or on the boundary."""


class ConfigError(QBayesError, ValueError):
    """An experiment configuration failed validation.

    ``field`` names the offending config entry (dotted path) when known.
    """

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)
