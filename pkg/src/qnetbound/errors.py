"""Exception types raised across the package."""


class DomainError(ValueError):
    """A numeric argument lies outside the domain where a quantity is defined."""


class SpecificationError(ValueError):
    """A channel or chain description is incomplete or inconsistent."""


class NetworkValidationError(ValueError):
    """A network violates a structural invariant (self-loop, unknown node, ...)."""


class TooManyNodesError(ValueError):
    """Exhaustive cut enumeration refused because the search space is too large."""


class DisconnectedError(Exception):
    """No path joins the two endpoints."""
