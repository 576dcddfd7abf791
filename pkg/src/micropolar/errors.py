"""Exception hierarchy shared by all modules."""


class MicropolarError(Exception):
    """Base class for library errors."""


class InvalidInputError(MicropolarError, ValueError):
    pass


class ParameterDomainError(MicropolarError, ValueError):
    """A material or criterion parameter is outside its admissible range."""


class SingularGradientError(MicropolarError, ArithmeticError):
    """Gradient requested where the stress measure vanishes."""


class CornerSingularityError(SingularGradientError):
    """Lode-angle derivative requested at a deviatoric corner."""


class IntegrationError(MicropolarError, RuntimeError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class ConsistencyError(IntegrationError):
    """Return map converged to a non-positive plastic multiplier."""
