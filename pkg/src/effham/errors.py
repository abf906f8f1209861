"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
1 for invalid input, 2 for numeric failure, 3 for I/O problems.
"""


class EffhamError(Exception):
    exit_code = 1


class ValidationError(EffhamError, ValueError):
    exit_code = 1


class ZeroVector(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class TooFewSamples(ValidationError):
    pass


class NonuniformGrid(ValidationError):
    pass


class GridMismatch(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class StepTooLarge(ValidationError):
    pass


class NotClosed(ValidationError):
    pass


class ParameterInconsistent(ValidationError):
    pass


class NumericFailure(EffhamError, ArithmeticError):
    exit_code = 2


class ConvergenceFailure(NumericFailure):
    pass


class Overflow(NumericFailure):
    """State norm ran away (non-Hermitian gain)."""


class InvariantViolation(NumericFailure):
    """A structural identity that holds by construction was found broken."""


class IOFailure(EffhamError, OSError):
    exit_code = 3
