"""Exception hierarchy shared by every module."""


class AlgebraError(Exception):
    """Base class for all errors raised by centralalg."""


class TermSyntaxError(AlgebraError, ValueError):
    pass


class ArityError(AlgebraError, ValueError):
    pass


class UnknownSymbol(AlgebraError, ValueError):
    pass


class UnboundVariable(AlgebraError, KeyError):
    pass


class SignatureMismatch(AlgebraError, ValueError):
    pass


class InvalidTable(AlgebraError, ValueError):
    pass


class NotACongruence(AlgebraError, ValueError):
    pass


class NotAHomomorphism(AlgebraError, ValueError):
    pass


class SizeBoundExceeded(AlgebraError):
    pass


class NotCentral(AlgebraError, ValueError):
    pass


class NoComplementFound(AlgebraError):
    pass


class ShortTermMissing(AlgebraError):
    pass


class VerificationFailed(AlgebraError):
    pass


class NonBooleanFC(AlgebraError):
    """Factor congruences do not form a Boolean lattice."""
