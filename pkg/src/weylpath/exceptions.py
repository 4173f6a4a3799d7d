"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class DimensionError(DomainError):
    """Two objects refer to different dimensions N."""


class NotAnAutomorphismError(DomainError):
    """A unitary does not normalize the finite Heisenberg group."""


class VerificationError(ArithmeticError):
    """Independent evaluation routes disagree beyond tolerance."""
