"""Irregularity profiling for discrete sequential datasets."""

__version__ = "0.1.0"

from .bank import (BankCatalog, BankEntry, IrregularityProfile, load_catalog,
                   profile, rank_bank, save_catalog)
from .errors import (IngestError, IntegrityError, ParameterError,
                     R2UndefinedError, SeqProfileError, SeriesBoundsError,
                     SeriesError, UsageError)
from .ingest import IngestReport, IngestSpec, ingest, ingest_bank
from .metrics import EvalReport, PredictionPair, evaluate, rank_reports
from .outliers import BoxStats, box_stats, irregularity_fraction
from .peaks import (IppdResult, PeakParams, PeakSet, billauer_peaks, ippd_peaks,
                    period_stats, tune_lookahead)
from .plot import emit_plot
from .quantiles import quantile
from .series import DescriptiveStats, TimeSeries, describe, slice_series
