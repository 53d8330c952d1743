"""Exceptions raised by the gerechte package.

The command-line front end maps these onto its exit codes, so the split
between input errors, unsupported requests and internal failures matters.
"""


class GerechteError(Exception):
    """Base class for every error raised by this package."""


class FrameworkError(GerechteError, ValueError):
    """A region partition is malformed or violates an operation's precondition."""


class ParseError(FrameworkError):
    """A framework or square file could not be parsed.

    Attributes:
        line (int|None): 1-based line number of the offending token
        column (int|None): 1-based column number of the offending token
    """

    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class DimensionMismatch(GerechteError):
    """Two arrays that must have the same size do not."""


class OutlineError(GerechteError, ValueError):
    """A composition or outline latin square is invalid."""


class ColouringError(GerechteError, ValueError):
    """An equitable colouring was requested for degrees not divisible by k."""


class ClassificationMismatch(GerechteError):
    """A construction was asked to realize a framework outside its family."""


class NoMethodApplicable(GerechteError):
    """No construction applies and brute force is out of reach."""


class BudgetExceeded(GerechteError):
    """The brute-force search ran out of its assignment or time budget."""


class GenerationError(GerechteError):
    """No framework of the requested class and parameters could be generated."""


class ConstructionError(GerechteError):
    """An internal invariant of a construction failed.

    Attributes:
        framework (str|None): canonical serialization of the offending framework
    """

    def __init__(self, message: str, framework: str = None):
        self.framework = framework
        super().__init__(message)


class Unrealizable(GerechteError):
    """Exhaustive search proved that a framework has no realization."""
