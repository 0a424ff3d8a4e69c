class ModcharError(Exception):
    """Base class for errors raised by this package."""


class RootSystemError(ModcharError, ValueError):
    pass


class CharacterError(ModcharError, ValueError):
    pass


class NotGoodFiltrationError(CharacterError):
    """A character does not expand with non-negative costandard multiplicities."""

    def __init__(self, message, weight=None):
        super().__init__(message)
        self.weight = weight


class TiltingDataError(ModcharError, ValueError):
    def __init__(self, message, weight=None):
        super().__init__(message)
        self.weight = weight


class UnsupportedWeightError(ModcharError, LookupError):
    """A tilting provider has no data for the requested highest weight."""

    def __init__(self, weight, provider=None):
        self.weight = tuple(weight)
        self.provider = provider
        where = f" ({provider})" if provider else ""
        super().__init__(f"no tilting data for T({list(self.weight)}){where}")


class ConsistencyError(ModcharError):
    """A computed quantity violates a structural invariant.

    This is how bad tilting data (or a failing instance of the tilting
    conjecture) shows up; it is never clamped away.
    """

    def __init__(self, message, weight=None):
        super().__init__(message)
        self.weight = weight
