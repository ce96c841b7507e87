"""Exception types shared across the package."""


class InkaError(Exception):
    """Base class for all domain errors raised by this package."""


class GraphError(InkaError, ValueError):
    """Invalid graph construction input (bad endpoint, self-loop, ...)."""


class ParseError(InkaError, ValueError):
    """Malformed input file.  Carries the source path and 1-based line number.

    The path may be attached after the fact (parsers see only text; file
    loaders know the path), so the rendered message is built on demand.
    """

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        super().__init__(message)
        self.message = message
        self.path = path
        self.line = line

    def __str__(self) -> str:
        where = ""
        if self.path is not None:
            where = f"{self.path}:"
        if self.line is not None:
            where += f"{self.line}:"
        return f"{where} {self.message}" if where else self.message


class ParseWarning(UserWarning):
    """Recoverable oddity in an input file (e.g. declared edge count is off)."""


class LayoutError(InkaError, RuntimeError):
    """Layout computation failed (e.g. forces blew up to non-finite values)."""


class InfeasibleError(InkaError, ValueError):
    """No parameter value satisfies the requested ink/area budget."""


class DegenerateDrawingError(InkaError, ValueError):
    """Drawing has no usable extent (zero area, coincident nodes with r=0)."""
