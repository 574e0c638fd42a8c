"""Exception hierarchy shared by the analytic and simulation modules."""


class BilinearError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BilinearError, ValueError):
    """A parameter lies outside the region where a quantity is defined."""


class StationarityError(DomainError):
    """The model violates the fourth-moment stationarity condition."""


class NumericalError(BilinearError, ArithmeticError):
    """A computation hit a pole, overflowed or degenerated."""


class PoleError(NumericalError):
    """A denominator of the moment recursion is (numerically) zero."""


class DegenerateError(NumericalError):
    """A variance that must be positive is (numerically) zero."""


class SimulationOverflowError(NumericalError):
    """A simulated path left the representable range (explosive model)."""


class UnresolvedBracketError(NumericalError):
    """A sign-change bracket is too flat to be bisected reliably."""
