"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the command line
front end reports alongside exit status 3.
"""


class FrobError(Exception):
    code = "error"


class DivisionByZero(FrobError, ZeroDivisionError):
    code = "division-by-zero"


class RingMismatch(FrobError, ValueError):
    code = "ring-mismatch"


class Overflow(FrobError, OverflowError):
    code = "overflow"


class BadIndex(FrobError, IndexError):
    code = "bad-index"


class NotPrime(FrobError, ValueError):
    code = "not-prime"


class DuplicateVar(FrobError, ValueError):
    code = "duplicate-var"


class BadOrder(FrobError, ValueError):
    code = "bad-order"


class ParseError(FrobError, ValueError):
    """Syntax error at a 1-based (line, column) position."""

    code = "parse-error"

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownVar(ParseError):
    code = "unknown-var"


class BadExponent(ParseError):
    code = "bad-exponent"


class NeedsGB(FrobError):
    code = "needs-gb"


class TooManyVars(FrobError):
    code = "too-many-vars"


class TooLarge(FrobError):
    code = "budget"


class NotZeroDim(FrobError):
    code = "not-zero-dim"


class UnitIdeal(FrobError):
    code = "unit-ideal"


class NotFPure(FrobError):
    code = "not-F-pure"


class NoStabilize(FrobError):
    code = "no-stabilize"


class BadWitness(FrobError, ValueError):
    code = "bad-witness"


class Inconsistent(FrobError):
    """An internal cross-check between two independent routes disagreed."""

    code = "inconsistent"
