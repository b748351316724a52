"""Exception hierarchy shared by every module."""


class LoopError(Exception):
    """Base class for all errors raised by midbol."""


class Malformed(LoopError, ValueError):
    pass


class NotLatin(LoopError, ValueError):
    pass


class NoIdentity(LoopError, ValueError):
    pass


class InversesNotTwoSided(LoopError, ValueError):
    """Raised when x^{-1} is needed but left and right inverses differ."""


class DegreeMismatch(LoopError, ValueError):
    pass


class CapExceeded(LoopError, RuntimeError):
    pass


class LimitExceeded(LoopError, RuntimeError):
    pass


class NotASubgroup(LoopError, ValueError):
    pass


class NotAutomorphisms(LoopError, ValueError):
    pass


class NotCommonSubgroup(LoopError, ValueError):
    pass


class NotCommutativeBase(LoopError, ValueError):
    pass


class BudgetExceeded(LoopError, RuntimeError):
    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)


class NoneFound(LoopError, RuntimeError):
    pass
