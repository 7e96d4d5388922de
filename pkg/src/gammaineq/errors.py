class DomainError(ValueError):
    """Argument outside the domain of a function or inequality."""


class DegenerateInputError(DomainError):
    """Arguments coincide where the formula needs them distinct."""


class PreconditionError(DomainError):
    """An order or parameter violates the stated hypothesis of an inequality."""


class UnknownIdError(KeyError):
    """Registry lookup with an id that does not exist."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown id"


class RegionError(ValueError):
    """A scan region reaches outside the domain of its inequality."""
