"""Exception types raised across the package.

All exceptions derive from :class:`FiltintError` so callers can catch the
package's failures with a single except clause while still distinguishing
individual conditions.
"""


class FiltintError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPolynomial(FiltintError):
    """Root finding was requested for the identically zero polynomial."""


class PoleEvaluation(FiltintError):
    """A transfer function was evaluated too close to one of its poles."""


class BoundaryRoot(FiltintError):
    """A root lies on (or numerically on) the stability boundary.

    Carries the offending roots in ``roots``.
    """

    def __init__(self, message, roots=()):
        super().__init__(message)
        self.roots = tuple(roots)


class ZeroGx(FiltintError):
    """The signal model gx is the zero function; the analysis is undefined."""


class SharedPoleNotCancelled(FiltintError):
    """A shared unstable pole was not found among the difference
    polynomial's roots at the required tolerance."""

    def __init__(self, message, pole=None):
        super().__init__(message)
        self.pole = pole


class DegreeCollapse(FiltintError):
    """The difference polynomial's trimmed degree fell below the degree
    predicted from the operand degrees, outside the known degenerate-gain
    situation."""


class DegenerateGain(FiltintError):
    """The gains make the leading coefficient of the difference polynomial
    vanish, so the equal-degree closed form does not apply.

    ``fallback_value`` carries the direct log-integral evaluated from the
    collapsed factorization when one could be computed (bits), else None.
    """

    def __init__(self, message, fallback_value=None):
        super().__init__(message)
        self.fallback_value = fallback_value


class ZeroGain(FiltintError):
    """The estimate path has gain zero, so its log integral is undefined."""


class OriginRoot(FiltintError):
    """A zero or pole sits at the origin where the weighted integral (or the
    value of the function at zero frequency) is required."""


class NotConverged(FiltintError):
    """Adaptive quadrature exhausted its evaluation budget before reaching
    the requested tolerance."""

    def __init__(self, message, value=None, abs_error_estimate=None,
                 n_evaluations=0):
        super().__init__(message)
        self.value = value
        self.abs_error_estimate = abs_error_estimate
        self.n_evaluations = n_evaluations


class Inconclusive(FiltintError):
    """The divergence probe could neither confirm convergence nor divergence
    from the partial-integral increments."""


class PreconditionUnmet(FiltintError):
    """A cross-check was requested for a system that does not satisfy the
    normalization the cross-check relies on."""


class ParseError(FiltintError):
    """The input document is not syntactically valid JSON."""


class SchemaError(FiltintError):
    """The input document is valid JSON but does not match the expected
    schema."""
