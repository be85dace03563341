"""Exception hierarchy shared by all modules."""


class WSpaceError(Exception):
    """Base class for every error raised by this package."""


class ParseError(WSpaceError, ValueError):
    pass


class DomainError(WSpaceError, ValueError):
    pass


class ResultNotRepresentable(WSpaceError):
    """The exact result leaves the closed-form class of sequences."""


class PreconditionViolated(WSpaceError, ValueError):
    pass


class MaxEntryInTail(PreconditionViolated):
    pass


class DegenerateTail(WSpaceError, ZeroDivisionError):
    """Raised when 1 - A(n+1) vanishes and a(i, n) is undefined."""


class SampleNotInSource(WSpaceError, ValueError):
    pass


class WrongKind(WSpaceError, TypeError):
    pass


class StructureViolation(WSpaceError, ValueError):
    def __init__(self, prop, detail=""):
        self.prop = prop
        super().__init__(f"{prop}: {detail}" if detail else prop)


class PatternUnrecognized(WSpaceError):
    pass


class NormTooLarge(WSpaceError, ValueError):
    pass


class NotAMember(WSpaceError, ValueError):
    pass


class NotUnitNorm(WSpaceError, ValueError):
    pass


class NotInSPlus(WSpaceError, ValueError):
    pass


class WitnessInvalid(WSpaceError, ValueError):
    pass
