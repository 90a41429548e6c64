"""Exception types shared across the package.

Every error raised on a violated precondition derives from ``PairTomoError``,
so callers can catch the package's failures with a single except clause while
still distinguishing usage errors (``ValueError`` family) from numerical ones.
"""


class PairTomoError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(PairTomoError, ValueError):
    """Operands live over sets of different cardinality."""


class LengthMismatch(PairTomoError, ValueError):
    """A coefficient vector does not match the frame's size."""


class NotComposable(PairTomoError, ValueError):
    """Transition composition attempted with mismatched endpoints."""


class NotInvertible(PairTomoError, ValueError):
    """Residue has no multiplicative inverse modulo n."""


class NotPrime(PairTomoError, ValueError):
    """Modulus is not prime where field structure is required."""


class NotOddPrime(NotPrime):
    """Modulus is not an odd prime (2 is excluded from all affine paths)."""


class ZeroArgument(PairTomoError, ValueError):
    """Discrete logarithm of zero requested."""


class NoUniqueFixedPoint(PairTomoError, ValueError):
    """Fixed point requested for a translation (mu = 1)."""


class Unsupported(PairTomoError, ValueError):
    """Cardinality outside the supported range (e.g. n <= 2 for frames)."""


class TooLarge(PairTomoError, ValueError):
    """Enumeration request beyond the configured cap."""


class NotSquare(PairTomoError, ValueError):
    """A square matrix was expected."""


class IllConditioned(PairTomoError, ValueError):
    """Frame metric operator too close to singular on its span."""


class IncompleteFamily(PairTomoError, ValueError):
    """Tomogram family does not cover every group element exactly once."""


class UnbiasednessFailed(PairTomoError, AssertionError):
    """Self-check of the mutually-unbiased-basis construction failed."""


class InvalidState(PairTomoError, ValueError):
    """State data violates one or more state invariants.

    ``violations`` lists the failed invariants in human-readable form.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid state: " + "; ".join(self.violations))
