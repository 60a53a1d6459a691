"""
Custom exceptions for unipade.

Every error carries a class-level `exit_code` used by the command-line driver and an
optional `payload` with partial results (best-so-far fits, transcript prefixes).
"""


class UnipadeError(Exception):
    """Base class for unipade errors."""

    exit_code: int = 1
    message: str = "Computation failed"

    def __init__(self, message: str = None, payload=None):
        if message:
            self.message = message
        self.payload = payload
        super().__init__(self.message)

    def __str__(self):
        return f"{type(self).__name__}: {self.message}"


class TruncationExceeded(UnipadeError):
    """A coefficient beyond the stored truncation order was requested."""

    message = "Coefficient index exceeds the truncation order"


class NotInD(UnipadeError):
    """The Hankel determinant vanishes within tolerance."""

    exit_code = 2
    message = "Series is not in D_{p,q} at this center"


class IllConditioned(UnipadeError):
    """A solve succeeded but failed its residual or robustness check."""

    message = "Computation is ill-conditioned at the working precision"


class CapExceeded(UnipadeError):
    """A size cap from the configuration was exceeded."""

    message = "Configured cap exceeded"


class CenterOnPole(UnipadeError):
    """The expansion center is a zero of the denominator."""

    message = "Center is a pole of the rational function"


class InfiniteValue(UnipadeError):
    """The euclidean metric met the point at infinity."""

    message = "Infinite value under the euclidean metric"


class LengthMismatch(UnipadeError):
    """Coefficient lists of different lengths were compared."""

    message = "Coefficient lists have different lengths"


class PoleInRegion(UnipadeError):
    """A pole lies inside a region where the function must be holomorphic."""

    message = "Pole inside the sampled region"


class DegenerateShape(UnipadeError):
    """A compact set with degenerate parameters."""

    message = "Degenerate shape parameters"


class UnsupportedDomain(UnipadeError):
    """The domain is outside the supported parametric families."""

    message = "Unsupported domain"


class BudgetExhausted(UnipadeError):
    """The approximation target was not reached within the degree budget."""

    exit_code = 4
    message = "Degree budget exhausted before reaching the target error"


class RankDeficient(UnipadeError):
    """The least-squares basis lost rank on the sample set."""

    message = "Least-squares basis is rank deficient on the samples"


class RootFindingFailed(UnipadeError):
    """Denominator roots could not be located."""

    message = "Root finding did not converge"


class NoUsableIndex(UnipadeError):
    """The index table prefix has no admissible entry."""

    message = "No usable index in the table prefix"


class DepthCapExceeded(UnipadeError):
    """Span depth above the configured cap."""

    message = "Span depth exceeds the configured cap"


class EnumerationExhausted(UnipadeError):
    """A single-pass enumeration ran out of pairs."""

    message = "Target enumeration exhausted"


class InvalidPerturbation(UnipadeError):
    """A witness perturbation of zero was requested."""

    message = "Perturbation must be nonzero"


class NotCoprime(UnipadeError):
    """Numerator and denominator share a root within threshold."""

    message = "Numerator and denominator are not coprime"


class ZeroDenominator(UnipadeError):
    """A rational function was built with a zero denominator."""

    message = "Denominator is the zero polynomial"


class ConfigError(UnipadeError):
    """Invalid configuration or unreadable input."""

    exit_code = 3
    message = "Invalid configuration"
