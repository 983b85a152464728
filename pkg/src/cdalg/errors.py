"""Exception hierarchy shared by every module of the package."""


class CDAlgError(Exception):
    """Base class for all errors raised by cdalg."""


class ZeroDivisorError(CDAlgError, ZeroDivisionError):
    pass


class ValuationError(CDAlgError, ValueError):
    pass


class LimitDivergesError(CDAlgError, ArithmeticError):
    pass


class SubstitutionPoleError(CDAlgError, ZeroDivisionError):
    pass


class ReservedVariableError(CDAlgError, ValueError):
    pass


class SingularMatrixError(CDAlgError, ValueError):
    pass


class DimensionMismatchError(CDAlgError, ValueError):
    pass


class InputError(CDAlgError, ValueError):
    """Malformed user input (files, expressions, options)."""


class ParseError(InputError):
    """Syntax error carrying a 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class SqrtError(InputError):
    pass


class GraphInconsistencyError(CDAlgError):
    """A verified degeneration contradicts a recorded obstruction."""

    def __init__(self, source, target, detail=""):
        self.source = source
        self.target = target
        msg = f"inconsistent pair {source} -> {target}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
