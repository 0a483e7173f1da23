"""Shared value types, unit conversions and seed derivation.

All entropy values inside this package are expressed in nats.  Bits only
appear at presentation boundaries via :func:`to_bits` / :func:`to_nats`.
Time series are plain 1-D float arrays; :func:`ensure_series` is the single
validation gate that turns arbitrary array-likes into one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

LN2 = math.log(2.0)

ESTIMATOR_IDS = ("npd", "apen", "sampen", "permen")

_MASK64 = (1 << 64) - 1


class InsufficientDataError(ValueError):
    """Raised when an input series is too short for the requested estimate."""


class UndefinedEstimateError(ArithmeticError):
    """Raised when an estimator is mathematically undefined on the input."""


def to_bits(nats: float) -> float:
    """Convert an entropy value from nats to bits."""
    return nats / LN2


def to_nats(bits: float) -> float:
    """Convert an entropy value from bits to nats."""
    return bits * LN2


def ensure_series(values, name: str = "series") -> np.ndarray:
    """Validate and return ``values`` as a finite 1-D float64 array, N >= 1.

    Raises ValueError identifying the first offending index when a sample
    is NaN or infinite.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {x.shape}")
    if x.size < 1:
        raise InsufficientDataError(f"{name} must contain at least one sample")
    finite = np.isfinite(x)
    if not finite.all():
        bad = int(np.argmin(finite))
        raise ValueError(f"{name} has non-finite sample {x[bad]!r} at index {bad}")
    return x


def summarize(values) -> tuple[float, float]:
    """Mean and unbiased (k-1 denominator) sample variance of replicate values.

    Requires at least two values; fewer have no defined sample variance.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.size < 2:
        raise InsufficientDataError(
            f"summarize needs at least 2 replication values, got {v.size}"
        )
    return float(v.mean()), float(v.var(ddof=1))


def _splitmix64(z: int) -> int:
    # SplitMix64 finalizer; the standard 64-bit avalanche mix.
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(base_seed: int, *indices: int) -> int:
    """Derive a child seed from a 64-bit base seed and integer indices.

    Chains the SplitMix64 finalizer over the indices, so any change to the
    base seed or to any index yields an unrelated stream.  Deterministic
    across runs and platforms.
    """
    acc = base_seed & _MASK64
    for ix in indices:
        acc = _splitmix64(acc ^ (int(ix) & _MASK64))
    return _splitmix64(acc)


@dataclass(frozen=True)
class EstimateReport:
    """Summary of one estimator evaluated over replicated series.

    ``replication_values`` and the derived statistics are in nats.
    ``variance`` is the unbiased sample variance, absent for a single
    replication.
    """

    estimator_id: str
    params: dict = field(default_factory=dict)
    replication_values: tuple = ()
    mean_nats: float = math.nan
    variance: float | None = None

    def __post_init__(self):
        if self.estimator_id not in ESTIMATOR_IDS:
            raise ValueError(
                f"unknown estimator id {self.estimator_id!r}, "
                f"expected one of {ESTIMATOR_IDS}"
            )

    @classmethod
    def from_values(cls, estimator_id: str, params: dict, values) -> "EstimateReport":
        vals = tuple(float(v) for v in values)
        if not vals:
            raise InsufficientDataError("a report needs at least one replication value")
        if len(vals) == 1:
            return cls(estimator_id, dict(params), vals, vals[0], None)
        mean, var = summarize(vals)
        return cls(estimator_id, dict(params), vals, mean, var)

    def mean_bits(self) -> float:
        return to_bits(self.mean_nats)
