"""Exception types raised by spherelab."""


class PoleError(ValueError):
    """Raised when a special function is evaluated at (or next to) a pole."""


class DomainError(ValueError):
    """Raised when an input falls outside the domain where a quantity is defined."""
