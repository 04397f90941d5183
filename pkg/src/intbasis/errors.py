"""Exception hierarchy shared by every module of the package."""


class IntBasisError(Exception):
    """Base class for all errors raised by :mod:`intbasis`."""


class InputError(IntBasisError):
    """Problems with the user supplied curve (CLI exit code 3)."""


class ParseError(InputError):
    pass


class NotPrime(InputError):
    pass


class TooSmall(InputError):
    """The characteristic does not satisfy ``p > 2n``."""


class NotMonic(InputError):
    pass


class SquarefreeViolation(InputError):
    pass


class ContextMismatch(IntBasisError):
    pass


class NotCoprime(IntBasisError):
    pass


class RankDeficient(IntBasisError):
    pass


class Singular(IntBasisError):
    pass


class NonIntegralTrace(IntBasisError):
    pass


class InsufficientPrecision(IntBasisError):
    pass


class WildRamification(IntBasisError):
    pass


class InternalInvariantBroken(IntBasisError):
    """A mathematical invariant failed at runtime (CLI exit code 4)."""
