"""Exception hierarchy for sheafdp."""


class SheafError(Exception):
    """Base class for every error raised by this package."""


# topology
class InvalidBase(SheafError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations) or "invalid base")


class LatticeTooLarge(SheafError):
    pass


class NoExtension(SheafError):
    pass


# sheaf
class NotASubset(SheafError):
    pass


class CoverMismatch(SheafError):
    pass


class DomainMismatch(SheafError):
    pass


class PointNotInDomain(SheafError):
    pass


class IncompatibleSections(SheafError):
    """Two local sections disagree on a shared point."""

    def __init__(self, point, first, second):
        self.point = point
        self.first = first
        self.second = second
        super().__init__(
            f"sections disagree at point {point}: {first!r} != {second!r}"
        )


# engine
class RuleDomainError(SheafError):
    pass


class NonDeterministicReplay(SheafError):
    pass


class TraceCorrupt(SheafError):
    pass


class InvalidSchedule(SheafError, ValueError):
    pass


# examples
class IndexOutOfRange(SheafError, IndexError):
    pass


class NotPrime(SheafError, ValueError):
    pass


class GluingConflict(SheafError):
    pass
