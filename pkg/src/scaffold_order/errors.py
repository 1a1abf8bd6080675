"""Exception types raised by the library."""


class ScaffoldError(ValueError):
    """Base class for invalid input."""


class RangeError(ScaffoldError):
    pass


class CoprimalityError(ScaffoldError):
    pass


class MonotonicityError(ScaffoldError):
    pass


class NormalizationError(ScaffoldError):
    pass


class ConsistencyError(RuntimeError):
    """The freeness criteria disagreed on some residue.

    ``mismatches`` holds the offending reports so the caller can print the
    witnesses of every method.
    """

    def __init__(self, message, mismatches=()):
        super().__init__(message)
        self.mismatches = list(mismatches)
