"""
Exceptions raised to callers.

Internal sanity checks stay as assertions; these classes cover conditions
a caller can trigger with valid-looking input.
"""


class L00p3rError(Exception):
    pass


class DomainError(L00p3rError, ValueError):
    """
    Argument outside the domain of an operation (odd length, n = 0, ...).
    """


class InvalidInputError(L00p3rError, ValueError):
    pass


class InvalidWordError(InvalidInputError):
    pass


class InvalidPolygonError(InvalidInputError):
    """
    Word that is not closed or not self-avoiding.
    """


class FormatLimitError(L00p3rError, ValueError):
    pass


class TableTooSmallError(L00p3rError, LookupError):
    def __init__(self, required_index, max_index):
        self.required_index = required_index
        self.max_index = max_index
        super().__init__(
            f"C-table max_index {max_index} is too small, index {required_index} is required"
        )


class TableFormatError(L00p3rError, ValueError):
    def __init__(self, message, line_number):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class StoreFormatError(L00p3rError, ValueError):
    def __init__(self, message, byte_offset):
        self.byte_offset = byte_offset
        super().__init__(f"byte {byte_offset}: {message}")


class OrderError(L00p3rError, ValueError):
    def __init__(self, message, index):
        self.index = index
        super().__init__(f"word #{index}: {message}")


class StreamMismatchError(L00p3rError, ValueError):
    pass


class IllConditionedError(L00p3rError, ArithmeticError):
    pass


class InterpolationError(L00p3rError, ArithmeticError):
    pass


class MagnitudeError(L00p3rError, OverflowError):
    pass
