"""Exception hierarchy shared by every fopkit module."""


class FopkitError(Exception):
    """Base class for all toolkit errors."""


# structures
class EmptyUniverseError(FopkitError):
    pass


class OutOfRangeError(FopkitError):
    pass


class MissingInterpretationError(FopkitError):
    pass


class ArityMismatchError(FopkitError):
    pass


class LengthMismatchError(FopkitError):
    pass


class ConstantOutOfRangeError(FopkitError):
    pass


class EmptyWordError(FopkitError):
    pass


class VocabularyError(FopkitError):
    pass


# syntax
class ParseError(FopkitError):
    """Raised on malformed concrete syntax.

    Carries the offending position (offset, line, column) and the tokens the
    parser would have accepted there.
    """

    def __init__(self, message, text="", pos=0, expected=()):
        self.text = text
        self.pos = pos
        self.expected = tuple(expected)
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        detail = f"{message} at line {self.line}, column {self.column}"
        if self.expected:
            detail += f" (expected {', '.join(self.expected)})"
        super().__init__(detail)


class UnknownSymbolError(FopkitError):
    pass


class UnboundVariableError(FopkitError):
    pass


class FunctionTermOutsideBinderError(FopkitError):
    pass


# evaluation
class UnassignedFreeVariableError(FopkitError):
    pass


class FreeVariableInSentenceError(FopkitError):
    pass


class BudgetExceededError(FopkitError):
    def __init__(self, message, estimate=None, budget=None):
        self.estimate = estimate
        self.budget = budget
        super().__init__(message)


class NotExistentialPrefixError(FopkitError):
    pass


# queries and duals
class QueryError(FopkitError):
    pass


class EmptyImageUniverseError(FopkitError):
    pass


class ConstantUndefinedError(FopkitError):
    pass


class UnsupportedNumericAtomError(FopkitError):
    pass


class NonElaboratedInputError(FopkitError):
    pass


class UnknownNameError(FopkitError):
    pass
