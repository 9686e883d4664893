"""Exception types shared across the package."""


class DPColorError(Exception):
    """Base class for all package errors."""


class ParameterError(DPColorError, ValueError):
    """An argument is outside the domain of the operation."""


class ResourceError(DPColorError, RuntimeError):
    """An exact computation would exceed its size budget."""


class ProfileError(DPColorError, ValueError):
    """A growth profile violates its monotonicity contract."""


class LoadError(DPColorError, ValueError):
    """A graph or assignment file is malformed."""
