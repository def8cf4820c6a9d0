"""Exception hierarchy shared by all modules."""


class SuperweierError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SuperweierError, ValueError):
    """Input rejected before any numerical work is done."""


class NumericalError(SuperweierError, ArithmeticError):
    """Numerical failure during evaluation."""


class ZeroValue(NumericalError):
    """The exact zero has no log-polar representation."""


class Overflow(NumericalError):
    """Value only representable in log-polar form."""


class CancellationToZero(NumericalError):
    """A sum is numerically indistinguishable from zero, even after escalation."""


class DomainError(ValidationError):
    pass


class ResourceLimit(ValidationError):
    pass


class DuplicateNodes(ValidationError):
    pass


class InvalidParams(ValidationError):
    pass


class InvalidTolerance(ValidationError):
    pass


class DegenerateRatio(ValidationError):
    pass


class PreconditionViolated(ValidationError):
    """A hypothesis of the bound does not hold for the requested arguments.

    ``binding`` names the constraint that failed (for example ``"n >= K_max"``)
    and ``min_n`` carries the smallest admissible integer when it is known.
    """

    def __init__(self, message, binding=None, min_n=None):
        super().__init__(message)
        self.binding = binding
        self.min_n = min_n


class BudgetExceeded(ValidationError):
    pass
