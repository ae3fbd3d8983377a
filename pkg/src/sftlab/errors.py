"""Exception hierarchy.

Errors fall into three families that the CLI maps onto exit codes:
``InvalidInput`` (2), ``DomainRefusal`` (3) and ``InternalCheckFailure`` (1).
"""


class SftlabError(Exception):
    exit_code = 1


class InvalidInput(SftlabError):
    exit_code = 2


class DomainRefusal(SftlabError):
    exit_code = 3


class InternalCheckFailure(SftlabError):
    """A proven statement failed to hold; signals an implementation bug."""

    exit_code = 1


# -- input validation ------------------------------------------------------

class ZeroRowOrColumn(InvalidInput):
    def __init__(self, symbol, kind="row"):
        super().__init__(f"symbol {symbol!r} has an all-zero {kind}")
        self.symbol = symbol
        self.kind = kind


class NonBinaryEntry(InvalidInput):
    pass


class DuplicateSymbol(InvalidInput):
    def __init__(self, symbol):
        super().__init__(f"duplicate symbol {symbol!r}")
        self.symbol = symbol


class NotSquare(InvalidInput):
    pass


class InvalidWord(InvalidInput):
    pass


class InvalidPoint(InvalidInput):
    pass


class TransitionNotRespected(InvalidInput):
    def __init__(self, i, j):
        super().__init__(f"transition {i!r}->{j!r} is not mapped to an allowed transition")
        self.transition = (i, j)


class ParseError(InvalidInput):
    pass


# -- mathematical preconditions --------------------------------------------

class NotIrreducible(DomainRefusal):
    pass


class NotMixing(DomainRefusal):
    pass


class EmptyShift(DomainRefusal):
    pass


class NotFactor(DomainRefusal):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotLeftClosing(DomainRefusal):
    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class NotClosing(DomainRefusal):
    pass


class NotAlmostInvertible(DomainRefusal):
    def __init__(self, d_star):
        super().__init__(f"code is not almost invertible (d* = {d_star})")
        self.d_star = d_star


class NotMagic(DomainRefusal):
    pass


class NotInXPrime(DomainRefusal):
    def __init__(self, message, explanation=None):
        super().__init__(message)
        self.explanation = explanation


class RingMismatch(DomainRefusal):
    pass


class FactorizationIncomplete(DomainRefusal):
    pass


class ResourceLimit(DomainRefusal):
    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


# -- failed self-checks ----------------------------------------------------

class CertificateFailure(InternalCheckFailure):
    pass


class UniquenessViolated(InternalCheckFailure):
    pass


class SignUndecided(InternalCheckFailure):
    pass


class GapNotCertified(InternalCheckFailure):
    pass
