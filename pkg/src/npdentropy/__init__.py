"""Differential entropy rate estimation for long-range dependent series.

The headline estimator quantises a real-valued series to integer symbols,
estimates the symbolic Shannon entropy rate from nearest-match lengths,
and adds the log cell width to recover a differential rate.  Alongside it
sit three comparison estimators (approximate, sample, and permutation
entropy), synthetic generators with long-range dependence, closed-form and
spectral ground-truth rates, and a sweep/bench harness with a CLI.
"""

from .analytic import (
    DEFAULT_SPECTRAL,
    SpectralConfig,
    arfima_entropy_rate,
    fgn_entropy_rate,
    fgn_spectral_density,
)
from .baselines import (
    ApEnParams,
    PermEnParams,
    approximate_entropy,
    permutation_entropy,
    sample_entropy,
)
from .core import (
    ESTIMATOR_IDS,
    EstimateReport,
    InsufficientDataError,
    UndefinedEstimateError,
    derive_seed,
    to_bits,
    to_nats,
)
from .harness import (
    BenchRow,
    ConfigError,
    EstimatorSpec,
    ExperimentConfig,
    SweepResult,
    SweepRow,
    evaluate_estimator,
    load_config,
    run_bench,
    run_sweep,
)
from .matchlen import match_lengths, rate_from_lengths, shannon_rate_ml
from .npd import DEFAULT_DELTAS, auto_config, npd_entropy, npd_sweep_delta
from .processes import (
    PROCESS_KINDS,
    ProcessSpec,
    fgn_autocovariance,
    generate,
    read_series_csv,
    write_series_csv,
)
from .quantizer import QuantizerConfig, SymbolSeries, quantize

__version__ = "0.1.0"

__all__ = [
    "ApEnParams",
    "BenchRow",
    "ConfigError",
    "DEFAULT_DELTAS",
    "DEFAULT_SPECTRAL",
    "ESTIMATOR_IDS",
    "EstimateReport",
    "EstimatorSpec",
    "ExperimentConfig",
    "InsufficientDataError",
    "PROCESS_KINDS",
    "PermEnParams",
    "ProcessSpec",
    "QuantizerConfig",
    "SpectralConfig",
    "SweepResult",
    "SweepRow",
    "SymbolSeries",
    "UndefinedEstimateError",
    "approximate_entropy",
    "arfima_entropy_rate",
    "auto_config",
    "derive_seed",
    "evaluate_estimator",
    "fgn_autocovariance",
    "fgn_entropy_rate",
    "fgn_spectral_density",
    "generate",
    "load_config",
    "match_lengths",
    "npd_entropy",
    "npd_sweep_delta",
    "permutation_entropy",
    "quantize",
    "rate_from_lengths",
    "read_series_csv",
    "run_bench",
    "run_sweep",
    "sample_entropy",
    "shannon_rate_ml",
    "to_bits",
    "to_nats",
    "write_series_csv",
]
