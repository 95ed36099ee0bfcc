"""Exception hierarchy shared by all critline modules."""


class CritlineError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class SieveRangeError(CritlineError, ValueError):
    """Argument exceeds the factor sieve limit."""

    code = "sieve_range"


class PoleError(CritlineError, ArithmeticError):
    """Evaluation requested exactly at a pole."""

    code = "pole"


class DomainError(CritlineError, ValueError):
    """Argument outside the mathematical domain of the operation."""

    code = "domain"


class ConstraintError(CritlineError, ValueError):
    """A structural constraint (e.g. P(0)=0) is violated."""

    code = "constraint"


class ConditioningError(CritlineError, ArithmeticError):
    """Requested evaluation is too ill-conditioned to certify."""

    code = "conditioning"


class AccuracyError(CritlineError, ArithmeticError):
    """A quadrature or iteration failed to reach the requested accuracy."""

    code = "accuracy"


class ConfigError(CritlineError, ValueError):
    """Invalid run configuration."""

    code = "config"
