class RootlociError(Exception):
    """Base class for errors raised by this package."""


class DomainError(RootlociError, ValueError):
    """Invalid input: bad partition, out-of-range index, degree mismatch, ..."""


class ResourceLimitExceeded(RootlociError, RuntimeError):
    """A configured resource cap was hit before the computation finished.

    Raised instead of returning a partial (and therefore wrong) answer.
    """

    def __init__(self, message, *, pairs=None, ops=None):
        super().__init__(message)
        self.pairs = pairs
        self.ops = ops


class ExponentOverflow(ResourceLimitExceeded):
    """A monomial exponent no longer fits its packed field.

    The Groebner driver catches this once and retries with wider fields;
    escaping to the caller it means the computation is genuinely out of
    representable range.
    """

