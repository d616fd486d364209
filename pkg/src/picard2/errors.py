class Picard2Error(Exception):
    """Base class for library errors."""


class ValidationError(Picard2Error, ValueError):
    """Input data violates a structural invariant."""


class NoSolution(Picard2Error, ValueError):
    """A requested preimage does not exist."""


class SearchOverflow(Picard2Error, RuntimeError):
    """An exhaustive search would exceed its candidate cap."""
