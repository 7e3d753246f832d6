"""Exception hierarchy.

Two families: ``DomainError`` for bad input or out-of-scope requests, and
``InternalInconsistency`` for results that contradict a proven statement
(these mean a bug, or a falsified theorem).
"""


class ExcmutError(Exception):
    pass


class DomainError(ExcmutError):
    pass


class DimensionMismatch(DomainError):
    pass


class CyclicQuiver(DomainError):
    pass


class BadIndex(DomainError):
    pass


class RepInfinite(DomainError):
    pass


class NotIndecomposable(DomainError):
    pass


class IsProjective(DomainError):
    pass


class Unsupported(DomainError):
    pass


class ParseError(DomainError):
    pass


class UnsupportedFormat(DomainError):
    pass


class InternalInconsistency(ExcmutError):
    pass


class ApproximationNeitherMonoNorEpi(InternalInconsistency):
    pass


class DecorationUndecidable(InternalInconsistency):
    pass


class NonTermination(InternalInconsistency):
    pass


class InvariantViolation(InternalInconsistency):
    def __init__(self, clause, detail=""):
        super().__init__(f"{clause}: {detail}" if detail else clause)
        self.clause = clause
