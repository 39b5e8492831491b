"""Exception hierarchy shared by the symbolic and numeric layers."""


class AnLabError(Exception):
    pass


class SpecError(AnLabError, ValueError):
    """Malformed or semantically invalid spectrum / decomposition input."""


class ConditionViolation(AnLabError):
    """A spectrum fails one of the four AN conditions, so no decomposition exists."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidDecomposition(AnLabError, ValueError):
    pass


class WitnessError(AnLabError, ValueError):
    pass


class DegenerateTails(WitnessError):
    pass


class EqualValues(WitnessError):
    pass


class NoWitness(WitnessError):
    """Raised when a witness is requested for a spectrum that is AN."""


class NumericError(AnLabError):
    pass


class NotHermitian(NumericError, ValueError):
    pass


class NotPSD(NumericError, ValueError):
    pass


class NotOrthonormal(NumericError, ValueError):
    pass


class DependentInput(NumericError, ValueError):
    pass


class NoConvergence(NumericError):
    pass
