"""Exception types shared across flagcob."""


class FlagcobError(Exception):
    """Base class for every error raised by this package."""


class InvalidLetter(FlagcobError, ValueError):
    pass


class NotReduced(FlagcobError, ValueError):
    pass


class RankMismatch(FlagcobError, ValueError):
    pass


class NotAboveCoxeter(FlagcobError):
    """The permutation of a word is not above the Coxeter element in Bruhat order."""


class InvalidPartition(FlagcobError, ValueError):
    pass


class InvalidInterval(FlagcobError, ValueError):
    pass


class InvalidIndex(FlagcobError, ValueError):
    pass


class InvalidMove(FlagcobError, ValueError):
    pass


class Mismatch(FlagcobError, ValueError):
    """Operands live over different theories or ranks."""


class NoPointClass(FlagcobError):
    pass


class UnsupportedTheory(FlagcobError, ValueError):
    pass


class StabilityViolation(FlagcobError):
    pass


class TooLarge(FlagcobError, ValueError):
    pass


class InternalError(FlagcobError, AssertionError):
    """An invariant that the mathematics guarantees was violated."""
