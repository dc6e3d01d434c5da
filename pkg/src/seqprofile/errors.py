"""Exception hierarchy shared across the package."""


class SeqProfileError(Exception):
    """Base class for all package errors."""


class UsageError(SeqProfileError, ValueError):
    """Invalid call shape, e.g. an empty batch or candidate list."""


class ParameterError(SeqProfileError, ValueError):
    """A numeric parameter is out of its valid range."""


class SeriesError(SeqProfileError, ValueError):
    """A TimeSeries invariant is violated."""


class SeriesBoundsError(SeriesError, IndexError):
    """Slice indices fall outside the series."""


class IngestError(SeqProfileError):
    """Reading or cleaning a delimited file failed."""


class IntegrityError(SeqProfileError):
    """A persisted catalog is truncated, corrupt or has the wrong version."""


class R2UndefinedError(SeqProfileError, ArithmeticError):
    """R^2 is undefined because the actuals have zero variance.

    The remaining metrics are still available on ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
