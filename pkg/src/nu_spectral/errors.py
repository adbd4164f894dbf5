"""Exception and warning types shared across the package.

Everything raised on purpose derives from NuSpectralError so callers (and the
command line driver) can distinguish domain failures from genuine bugs.
"""


class NuSpectralError(Exception):
    """Base class for all deliberate failures in this package."""


class ParseError(NuSpectralError):
    """Malformed textual input.  Carries the offending position when known."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DegreeTooHigh(NuSpectralError):
    """Polynomial degree exceeds what the operation supports."""


class NotPolynomialRoot(NuSpectralError):
    """Root extraction requested from a polynomial with no roots (degree 0)."""


class NoPerfectSquare(NuSpectralError):
    """The shifted quadratic cannot be written as the square of a real
    linear polynomial over the supported exact field."""


class NoAdmissibleBranch(NuSpectralError):
    """No reduction branch satisfies the admissibility filter."""


class AmbiguousBranch(NuSpectralError):
    """More than one reduction branch satisfies the admissibility filter.

    The filter conditions are necessary, not sufficient, so a tie means the
    caller must disambiguate on physical grounds.  ``branches`` holds all
    matches.
    """

    def __init__(self, branches):
        self.branches = list(branches)
        super().__init__(
            f"{len(self.branches)} branches satisfy the admissibility filter"
        )


class DoubleRootUnsupported(NuSpectralError):
    """Canonical classification does not cover a double-root leading
    coefficient (the equation is confluent, not hypergeometric)."""


class ParameterOutOfRange(NuSpectralError):
    """A classical weight parameter fell outside its positivity range."""


class PoleAtNonPositiveInteger(NuSpectralError):
    """Gamma (or a plain hypergeometric series) was evaluated at a pole."""


class MaxTermsExceeded(NuSpectralError):
    """A series failed to converge within the term budget."""


class EmptySpectrum(NuSpectralError):
    """The requested potential binds no states at these parameters."""


class NoScatteringRegion(NuSpectralError):
    """The potential has no finite scattering threshold (both asymptotes
    are infinite)."""


class EnergyBelowRegion(NuSpectralError):
    """A scattering construction was requested below the scattering
    threshold."""


class GridTooCoarse(NuSpectralError):
    """Finite-difference eigenvalues from the two finest grids disagree by
    more than the requested tolerance."""


class NoConvergence(NuSpectralError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class CountMismatch(NuSpectralError):
    """Analytic and oracle spectra have different lengths."""


class CancellationWarning(UserWarning):
    """Significant digits were lost to cancellation; the result is still
    returned but its accuracy is degraded."""
