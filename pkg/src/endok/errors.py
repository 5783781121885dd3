"""Exception types shared across the package."""


class FieldMismatchError(ValueError):
    """Operands live over different coefficient fields (or different arities)."""


class NonCommutingError(ValueError):
    """A pair of matrices in a would-be commuting tuple does not commute."""

    def __init__(self, i, j):
        super().__init__(f"matrices {i} and {j} do not commute")
        self.i = i
        self.j = j


class ParseError(ValueError):
    """Syntax or validation error in textual input, with source position."""

    def __init__(self, message, line, column):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class EnumerationBoundError(ValueError):
    """Brute-force enumeration would exceed the configured size bound."""
