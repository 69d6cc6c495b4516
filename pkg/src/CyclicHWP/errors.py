"""Exception hierarchy for CyclicHWP.

Every failure raised by the construction or the interface derives from
CyclicHWPError. InputError covers bad parameters and malformed input
(CLI exit status 2), ConstructionError signals that an internal stage
produced something the next stage cannot use (CLI exit status 1).
Verification failures are never raised, they are reported.
"""


class CyclicHWPError(Exception):
    """Base class of all CyclicHWP errors"""


class InputError(CyclicHWPError):
    """Invalid parameters or malformed input"""


class ConstructionError(CyclicHWPError):
    """An internal construction stage broke its contract"""


class EllNotSupported(InputError):
    pass


class NTooSmall(InputError):
    pass


class LengthMismatch(InputError):
    pass


class SpecViolation(InputError):
    pass


class TooLarge(InputError):
    pass


class NotPairable(InputError):
    pass


class SkolemMismatch(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class DevelopBeforeCheck(InputError):
    pass


class SchemaError(InputError):
    pass


class ParseError(InputError):
    """Malformed certificate text, with the position of the problem"""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class NoMuFound(ConstructionError):
    pass


class DomainOverlap(ConstructionError):
    pass


class DomainGap(ConstructionError):
    pass


class InsufficientFlipSet(ConstructionError):
    pass


class AnchorViolation(ConstructionError):
    pass


class TooFewWitnesses(ConstructionError):
    pass


class SearchBudgetExceeded(ConstructionError):
    pass
