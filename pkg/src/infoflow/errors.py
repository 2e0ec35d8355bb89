"""Exception hierarchy for infoflow.

Every error class carries a distinct process exit code so the CLI can
report failures in a machine-checkable way.
"""


class InfoflowError(Exception):
    """Base class for all infoflow errors."""

    exit_code = 1


class ParseError(InfoflowError):
    """Malformed input file (ragged rows, non-numeric cells, NaN)."""

    exit_code = 2


class DegenerateInputError(InfoflowError):
    """Input data unusable for estimation (e.g. a constant series)."""

    exit_code = 3


class SingularCovarianceError(InfoflowError):
    """Sample covariance matrix is singular or numerically near-singular."""

    exit_code = 4


class SingularInformationError(InfoflowError):
    """Observed information matrix could not be inverted."""

    exit_code = 5


class DivergenceError(InfoflowError):
    """A simulated trajectory blew up to non-finite or huge values."""

    exit_code = 6


class DegenerateNormalizerError(InfoflowError):
    """All contributions to a node's entropy budget are zero."""

    exit_code = 7
