"""Exception hierarchy. Every error raised by the library derives from PFGrammarError."""


class PFGrammarError(ValueError):
    pass


class ZeroToNegativePower(PFGrammarError):
    pass


class UnassignedVariable(PFGrammarError):
    pass


class ParseError(PFGrammarError):
    pass


class BadParameter(PFGrammarError):
    pass


class UnknownGrammar(PFGrammarError):
    pass


class OrderTooLarge(PFGrammarError):
    pass


class ShapeViolation(PFGrammarError):
    pass


class LengthMismatch(PFGrammarError):
    pass


class TooLarge(PFGrammarError):
    pass


class EntryOutOfRange(PFGrammarError):
    pass


class NotAParkingFunction(PFGrammarError):
    pass


class NonIntegralShift(PFGrammarError):
    pass


class GcdViolation(PFGrammarError):
    pass


class ModViolation(PFGrammarError):
    pass


class ZeroArgument(PFGrammarError):
    pass


class DegenerateParameter(PFGrammarError):
    pass


class NonIntegerResult(PFGrammarError):
    """A sum that must be integral came out fractional. Indicates a bug, not bad input."""
