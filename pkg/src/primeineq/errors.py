"""Exception classes shared across the package.

The CLI maps these onto exit statuses: bad input is 2, blown resource
budgets are 3 (see cli.py).
"""


class InputError(ValueError):
    """Invalid argument or violated precondition."""


class ParseError(InputError):
    """Syntax error in a polynomial expression."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EnumerabilityError(InputError):
    """Polynomial cannot be enumerated exhaustively (negative non-constant term)."""


class OutOfRangeError(InputError):
    """Query outside the range a table or sequence can answer."""


class ResourceLimitError(RuntimeError):
    """A configured memory, point, or search budget would be exceeded."""


class SearchBudgetError(ResourceLimitError):
    """Bounded search exhausted; carries whatever was built so far."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
