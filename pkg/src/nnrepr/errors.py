"""Exception hierarchy.

The CLI maps these onto exit codes: :class:`FormatError` and
:class:`InvalidInputError` give 2, :class:`ResourceLimitError` gives 3.
"""


class NNReprError(Exception):
    """Base class for all package errors."""


class InvalidInputError(NNReprError, ValueError):
    """Arguments violate an operation's precondition."""


class FormatError(InvalidInputError):
    """A text or JSON artifact could not be parsed.

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"row {line}" if column is None else f"row {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class ResourceLimitError(NNReprError):
    """The request exceeds a configured size cap."""


class DegenerateFunctionError(InvalidInputError):
    """The target function is constant; a single anchor represents it."""


class StructuralError(InvalidInputError):
    """An anchor set cannot be a valid representation by construction."""
