"""Exception types raised across the package."""


class PushSumError(Exception):
    """Base class for all package errors."""


class InvalidParameters(PushSumError, ValueError):
    pass


class InvalidGraph(PushSumError, ValueError):
    pass


class InvalidInput(PushSumError, ValueError):
    pass


class InvalidSpectrum(PushSumError, ValueError):
    pass


class TooLarge(PushSumError, ValueError):
    """Dense Kronecker-square construction would exceed the dimension cap."""


class GenerationFailure(PushSumError, RuntimeError):
    """A random graph family could not be sampled within the retry cap."""


class NumericalFailure(PushSumError, ArithmeticError):
    pass


class WeightUnderflow(NumericalFailure):
    """A push-sum weight fell to (numerically) zero; ratios are undefined."""
