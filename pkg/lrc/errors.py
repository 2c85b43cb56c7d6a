# lrc/errors.py

"""
Error hierarchy for the whole package.

Every error is a ``ValueError`` so callers that only care about "bad value"
can keep catching that. ``exit_code`` is what the CLI returns for it:
2 for bad input, 1 for a domain failure, 3 for a broken internal invariant.
"""


class LrcError(ValueError):
    exit_code = 1


# ─── input / usage errors (exit 2) ───────────────────────────────────────

class InvalidInput(LrcError):
    exit_code = 2


class ZeroDiscriminant(InvalidInput):
    pass


class NotIrreducible(InvalidInput):
    pass


class FieldMismatch(InvalidInput):
    pass


class InvalidPrime(InvalidInput):
    pass


class DegreeMismatch(InvalidInput):
    pass


class NotSplit(InvalidInput):
    pass


class CapacityExceeded(InvalidInput):
    pass


class TooLarge(InvalidInput):
    pass


class InvalidScenario(InvalidInput):
    pass


class InvalidFamily(InvalidInput):
    pass


class SpecMismatch(InvalidInput):
    pass


class FormatError(InvalidInput):
    pass


# ─── domain failures (exit 1) ────────────────────────────────────────────

class DomainFailure(LrcError):
    exit_code = 1


class NotGood(DomainFailure):
    pass


class MTooSmall(DomainFailure):
    pass


class SearchLimitExceeded(DomainFailure):
    pass


class InsufficientLocalData(DomainFailure):
    pass


class InsufficientGlobalData(DomainFailure):
    pass


class Inconsistent(DomainFailure):
    pass


class OutOfRange(DomainFailure):
    pass


# ─── internal invariant violations (exit 3) ──────────────────────────────

class InvariantViolation(LrcError):
    exit_code = 3


class Unsatisfiable(InvariantViolation):
    pass
