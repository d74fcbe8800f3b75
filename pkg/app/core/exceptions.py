class CassiError(Exception):
    """Base class for every error raised by the toolkit."""

    exit_code: int = 1


class ShapeMismatchError(CassiError, ValueError):
    pass


class IndivisibleSizeError(ShapeMismatchError):
    pass


class InvalidParameterError(CassiError, ValueError):
    pass


class SystemMismatchError(CassiError, ValueError):
    pass


class NonFiniteValueError(CassiError, ArithmeticError):
    pass


class NonFiniteGradientError(NonFiniteValueError):
    """Raised by the optimizer when a gradient holds NaN or Inf."""

    def __init__(self, parameter: str):
        self.parameter = parameter
        super().__init__(f"Non-finite gradient for parameter '{parameter}'")


class NonScalarLossError(CassiError, ValueError):
    pass


class TapeMismatchError(CassiError, ValueError):
    pass


class UndefinedCorrelationError(CassiError, ArithmeticError):
    pass


class CubeFormatError(CassiError, ValueError):
    pass


class ReconstructionDivergedError(CassiError, ArithmeticError):
    """Raised when the optimization loss stops being finite."""

    def __init__(self, iteration: int, reason: str = "loss is not finite"):
        self.iteration = iteration
        super().__init__(f"Reconstruction diverged at iteration {iteration}: {reason}")


class CliUsageError(CassiError):
    exit_code = 2
