"""Exception hierarchy shared by every module."""


class AbelianGroupError(Exception):
    """Base class for all errors raised by abelbasis."""


class InvalidFactorization(AbelianGroupError, ValueError):
    pass


class FactorizationMismatch(AbelianGroupError, ValueError):
    pass


class NoIdentity(AbelianGroupError, ValueError):
    pass


class NotAbelian(AbelianGroupError, ValueError):
    pass


class NotGroup(AbelianGroupError, ValueError):
    pass


class BadModulus(AbelianGroupError, ValueError):
    pass


class NotEnumerable(AbelianGroupError, TypeError):
    pass


class OrderNotFound(AbelianGroupError, RuntimeError):
    """No divisor of |G| annihilates the element; the oracle is inconsistent."""


class NotInSubgroup(AbelianGroupError, LookupError):
    """The target is not in the span of the given independent set."""


class RelationInvalid(AbelianGroupError, ValueError):
    pass


class NotMinimalPower(AbelianGroupError, ValueError):
    pass


class NotGenerating(AbelianGroupError, ValueError):
    pass


class NotCyclicOrNotGenerating(AbelianGroupError, ValueError):
    pass


class TooLarge(AbelianGroupError, ValueError):
    pass
