class QuiverkitError(Exception):
    """Base class for every error raised by quiverkit."""


class ParseError(QuiverkitError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class GraphError(QuiverkitError, ValueError):
    pass


class CycleCapExceeded(QuiverkitError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"cycle cap exceeded (cap={cap})")


class PreconditionError(QuiverkitError, ValueError):
    """An operation was called on an input outside its domain.

    ``witness`` carries the offending object (edge, cycle, pair, ...) when
    there is one.
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class AmbientMismatch(QuiverkitError, ValueError):
    pass
