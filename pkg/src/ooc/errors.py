"""Exception types shared across the package.

Every error derives from :class:`OOCError`, which is itself a ``ValueError`` so
callers that only care about "bad input" can catch the builtin.
"""


class OOCError(ValueError):
    pass


class NotPrime(OOCError):
    pass


class CeilingExceeded(OOCError):
    pass


class NotADivisor(OOCError):
    pass


class ZeroElement(OOCError):
    pass


class InvalidParams(OOCError):
    pass


class ShapeMismatch(OOCError):
    pass


class EmptyFamily(OOCError):
    pass


class DuplicateMatrix(OOCError):
    pass


class NotMonic(OOCError):
    pass


class NonDivisibleResult(OOCError):
    pass


class ValidationFailed(OOCError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class LengthMismatch(OOCError):
    pass


class DuplicateA(OOCError):
    pass


class NotOddPrime(OOCError):
    pass


class ConditionViolated(OOCError):
    def __init__(self, message, which=None):
        super().__init__(message)
        self.which = which


class FamilyTooLarge(OOCError):
    pass


class NotPowerOfTwo(OOCError):
    pass


class ParseError(OOCError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
