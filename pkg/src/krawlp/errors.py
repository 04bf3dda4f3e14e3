"""Exception hierarchy shared by all krawlp modules."""


class KrawlpError(Exception):
    """Base class for all library errors."""


class InvalidInputError(KrawlpError, ValueError):
    """Malformed or mutually inconsistent inputs (mismatched lengths, bad indices)."""


class ParameterError(KrawlpError, ValueError):
    """A parameter is outside its documented range."""


class NotAConfigurationError(KrawlpError, ValueError):
    """A weight vector is not the configuration of any tuple of words."""


class NotLinearError(KrawlpError, ValueError):
    """A code failed the linearity (XOR closure) check."""


class CapacityError(KrawlpError, RuntimeError):
    """A requested computation exceeds its size budget.

    The message always states the budget that was exceeded so callers can
    report it.
    """


class IterationLimitError(KrawlpError, RuntimeError):
    """An iterative solver hit its pivot/iteration cap without an answer."""


class SolverNumericsError(KrawlpError, RuntimeError):
    """The floating-point solver reported numerical trouble."""


class SelfCheckError(KrawlpError, RuntimeError):
    """An internal re-verification pass failed; the result was discarded."""
