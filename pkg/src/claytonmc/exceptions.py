"""Exception hierarchy shared by every module of the package."""


class CopulaError(Exception):
    """Base class for all errors raised by claytonmc."""


class InvalidParameter(CopulaError, ValueError):
    """A model or algorithm parameter lies outside its admissible range."""


class InvalidInput(CopulaError, ValueError):
    """Input data has the wrong shape, size or contains non-finite values."""


class DomainError(CopulaError, ValueError):
    """A function was evaluated outside the domain where it is defined."""


class DensityOverflow(CopulaError, OverflowError):
    """``u**-theta`` (or ``v**-theta``) does not fit in a 64-bit float."""


class NoInteriorMaximum(CopulaError, RuntimeError):
    """The likelihood maximizer sits on the boundary of the search bracket."""

    def __init__(self, message, theta=None, side=None):
        super().__init__(message)
        self.theta = theta
        self.side = side


class NonFiniteObjective(CopulaError, RuntimeError):
    """The log-likelihood was non-finite at every probed parameter."""


class EmptyTail(CopulaError, RuntimeError):
    """No aggregate value strictly exceeds the Value-at-Risk."""


class PipelineError(CopulaError, RuntimeError):
    """Failure inside the risk pipeline, labelled with the failing stage."""

    def __init__(self, stage, cause):
        super().__init__(f"{stage} stage failed: {cause}")
        self.stage = stage
        self.cause = cause
