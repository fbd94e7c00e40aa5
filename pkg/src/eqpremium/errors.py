"""Exception types shared across the library.

Two broad families matter to callers (and to the CLI exit-code mapping):
ValidationError for bad inputs, NumericalError for computations that fail
on perfectly well-formed inputs.
"""


class ModelError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ModelError, ValueError):
    """Malformed or out-of-range input: matrices, coefficients, files."""


class NoUniqueStationaryError(ValidationError):
    """Transition matrix has no unique stationary distribution.

    Raised for reducible chains (including absorbing states and the
    identity matrix).  Periodic but irreducible chains still have a
    unique stationary vector and are accepted.
    """


class DegenerateMomentsError(ValidationError):
    """Moments are undefined, e.g. growth variance is zero."""


class InfeasibleGrowthError(ValidationError):
    """Calibration target implies a non-positive gross growth factor."""


class CorrelationRangeError(ValidationError):
    """Serial correlation target outside the open interval (-1, 1)."""


class IngestError(ValidationError):
    """Base class for data-pipeline failures."""


class SchemaError(IngestError):
    """A required column is missing from an input file."""


class ParseError(IngestError):
    """A cell could not be parsed; the message names the file row."""


class SpanError(IngestError):
    """Series do not overlap, or the overlap is too short to use."""


class NumericalError(ModelError):
    """A computation failed numerically despite valid inputs."""


class NoEquilibriumError(NumericalError):
    """The equity price system has no positive solution.

    Carries the discounted spectral radius ``beta_rho`` so callers can
    report how far outside the feasible region the request landed: the
    price series diverges once beta * rho(A) >= 1.
    """

    def __init__(self, message: str, beta_rho: float | None = None):
        super().__init__(message)
        self.beta_rho = beta_rho


class AllInfeasibleError(NumericalError):
    """No point of a frontier sweep admitted an equilibrium."""


class UnattainableReturnError(NumericalError):
    """Requested expected return is not attained on the feasible range."""
