"""Exception types shared across the package."""


class HypothesisViolation(ValueError):
    """A counting or structural hypothesis of a recovery procedure fails."""


class SearchDefect(AssertionError):
    """A constructive search failed although its hypothesis was satisfied."""


class GuardError(ValueError):
    """A size guard (length, rank, norm bound, denominator) was exceeded."""


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = " (line %d" % line + (", column %d)" % column if column is not None else ")")
        super().__init__(message + where)
