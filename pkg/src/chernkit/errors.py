"""Error taxonomy shared by every module.

Each class carries a stable ``code`` so the command line can report a
machine-readable identifier next to the message.
"""


class ChernkitError(Exception):
    code = "Error"


class NotSymmetric(ChernkitError):
    code = "NotSymmetric"


class EmptyPartition(ChernkitError):
    code = "EmptyPartition"


class PartsExceedTop(ChernkitError):
    code = "PartsExceedTop"


class IndexOutOfRange(ChernkitError):
    code = "IndexOutOfRange"


class NotPrime(ChernkitError):
    code = "NotPrime"


class RingMismatch(ChernkitError):
    code = "RingMismatch"


class PreconditionViolated(ChernkitError):
    code = "PreconditionViolated"


class NotInvertible(ChernkitError):
    code = "NotInvertible"


class NotDecomposable(ChernkitError):
    code = "NotDecomposable"


class RangeExceeded(ChernkitError):
    code = "RangeExceeded"


class CertificateFailure(ChernkitError):
    code = "CertificateFailure"


class EmptySubsetGiven(ChernkitError):
    code = "EmptySubsetGiven"


class GroundMismatch(ChernkitError):
    code = "GroundMismatch"


class DegreeMismatch(ChernkitError):
    code = "DegreeMismatch"


class WrongCoefficients(ChernkitError):
    code = "WrongCoefficients"


class ParseError(ChernkitError):
    code = "ParseError"
