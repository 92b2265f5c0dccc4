"""
Error types.

Every error carries a human-readable message and, where it makes sense, the
witness data (offending tuple, pair, element) in `witness`.
"""
from typing import Any


class GrogradeError(Exception):
    """Base error."""
    exit_code = 2

    def __init__(self, message: str, witness: Any = None):
        self.message = message
        self.witness = witness
        super().__init__(self.message)

    def to_dict(self):
        return {"error": type(self).__name__, "message": self.message, "witness": self.witness}


class InputError(GrogradeError):
    """Malformed or inconsistent input."""
    exit_code = 2


class CheckFailure(GrogradeError):
    """A mathematical check was falsified."""
    exit_code = 1


# groupoid
class InvalidParams(InputError):
    pass


class MissingComposition(InputError):
    pass


class NonAssociative(InputError):
    pass


class BadInverse(InputError):
    pass


class BadIdentity(InputError):
    pass


# finalg
class InvalidTable(InputError):
    pass


class NotIdempotent(InputError):
    pass


# algebra
class GradingViolation(InputError):
    pass


class IdentityNotInR(InputError):
    pass


class NotPrime(InputError):
    pass


class NotEpsilonStrong(CheckFailure):
    pass


class NoSolution(CheckFailure):
    pass


class NotUnique(CheckFailure):
    pass


# skew
class G1Violation(InputError):
    pass


class G2Violation(InputError):
    pass


class G3Violation(InputError):
    pass


class NotRingIso(InputError):
    pass


class BaseFieldMismatch(InputError):
    pass


class AssociativityFailure(CheckFailure):
    pass


# leavitt
class CyclicGraph(InputError):
    pass


# cohomology
class CapExceeded(InputError):
    pass


class NonHomomorphicDelta(CheckFailure):
    pass


# crossed
class NotCocycle(CheckFailure):
    pass


class SearchSpaceExceeded(InputError):
    pass


class BijectionFailure(CheckFailure):
    pass
