"""Exception hierarchy shared by the verification engine."""


class VerificationError(Exception):
    """Base class for every error raised by the engine."""

    exit_code = 3


class ExactArithmeticError(VerificationError):
    """Division by zero or incompatible operands in exact arithmetic."""


class HypothesisError(VerificationError):
    """A structural hypothesis of a check (e.g. lower hypergeometric parameters) is violated."""


class NonconvergentSeriesError(VerificationError):
    """A hypergeometric series was asked for outside its convergence domain."""


class DegenerateParameterError(VerificationError):
    """Special-function parameters hit a degenerate (undefined or logarithmic) case."""


class DomainError(VerificationError):
    """A point or argument lies outside the domain of the requested function."""


class ConvergenceError(VerificationError):
    """An absolute-convergence precondition of a coset sum is violated."""


class ConfigError(VerificationError):
    """Invalid suite configuration."""

    exit_code = 2


class UnknownSuiteError(ConfigError):
    """Suite name is not in the registry."""


class CacheCorruptionError(VerificationError):
    """A coset cache file does not match the documented format."""

    exit_code = 4
