"""Exception and warning types.

Two families: ``ContractViolation`` for inputs that break a documented
precondition (CLI exit code 2) and ``NumericalFailure`` for computations that
could not produce an answer (CLI exit code 3).
"""


class BedwaveError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = 1


class ContractViolation(BedwaveError, ValueError):
    exit_code = 2


class NumericalFailure(BedwaveError, ArithmeticError):
    exit_code = 3


class OutOfDomain(ContractViolation):
    pass


class GridTooSmall(ContractViolation):
    pass


class DecayViolation(ContractViolation):
    pass


class SupercriticalityViolation(ContractViolation):
    """Raised when the wave speed does not exceed the maximum current."""


class NonRealOutput(ContractViolation):
    pass


class NonCosineInput(ContractViolation):
    pass


class BadHeader(ContractViolation):
    pass


class NonUniformGrid(ContractViolation):
    pass


class PeriodMismatch(ContractViolation):
    """A periodic trace does not cover exactly one wavelength."""


class BadConfig(ContractViolation):
    pass


class BranchViolation(ContractViolation):
    """Raised when ``c**2 - 2 p`` is not positive, so no real branch exists."""


class NonFiniteCoefficient(NumericalFailure):
    pass


class NoSignChange(NumericalFailure):
    pass


class NoConvergence(NumericalFailure):
    pass


class DegenerateBVP(NumericalFailure):
    pass


class MultipleRootsWarning(UserWarning):
    """More than one root was bracketed; the smallest one was returned."""
