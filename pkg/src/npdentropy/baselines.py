"""Approximate, sample, and permutation entropy baselines.

Conventions follow the classical definitions: ApEn counts template matches
with d <= r and keeps the self-match, SampEn counts ordered pairs i != j
with strict d < r, PermEn is the Shannon entropy of ordinal patterns.
ApEn and SampEn are quadratic in N; PermEn is linear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import InsufficientDataError, UndefinedEstimateError, ensure_series

METRICS = ("chebyshev", "euclidean")

_BLOCK_ROWS = 256


@dataclass(frozen=True)
class ApEnParams:
    m: int = 3
    r: float = 0.2
    metric: str = "chebyshev"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if not self.r > 0:
            raise ValueError(f"r must be > 0, got {self.r}")
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")


@dataclass(frozen=True)
class PermEnParams:
    order: int = 3

    def __post_init__(self):
        if self.order < 2:
            raise ValueError(f"order must be >= 2, got {self.order}")


def _phi(x: np.ndarray, m: int, r: float, metric: str) -> float:
    """Mean log of self-inclusive match fractions over length-m templates.

    Distances accumulate coordinate by coordinate, so no (rows, M, m)
    intermediate is ever built.
    """
    templates = sliding_window_view(x, m)
    count = len(templates)
    log_fracs = np.empty(count)
    for lo in range(0, count, _BLOCK_ROWS):
        hi = min(lo + _BLOCK_ROWS, count)
        if metric == "chebyshev":
            acc = np.abs(templates[lo:hi, None, 0] - templates[None, :, 0])
            for k in range(1, m):
                np.maximum(
                    acc,
                    np.abs(templates[lo:hi, None, k] - templates[None, :, k]),
                    out=acc,
                )
            within = acc <= r
        else:
            acc = np.square(templates[lo:hi, None, 0] - templates[None, :, 0])
            for k in range(1, m):
                acc += np.square(templates[lo:hi, None, k] - templates[None, :, k])
            within = acc <= r * r
        log_fracs[lo:hi] = np.log(within.sum(axis=1) / count)
    return float(log_fracs.mean())


def approximate_entropy(values, params: ApEnParams = ApEnParams()) -> float:
    """ApEn(m, r) = Phi_m(r) - Phi_{m+1}(r), in nats.

    The self-match keeps every count positive, so the result is always
    defined; a constant series gives exactly 0.
    """
    x = ensure_series(values)
    if x.size < params.m + 2:
        raise InsufficientDataError(
            f"ApEn with m={params.m} needs at least {params.m + 2} samples, got {x.size}"
        )
    return _phi(x, params.m, params.r, params.metric) - _phi(
        x, params.m + 1, params.r, params.metric
    )


def _pair_count(templates: np.ndarray, r: float, metric: str) -> int:
    """Ordered pairs i != j with template distance strictly below r."""
    count = len(templates)
    total = 0
    for lo in range(0, count, _BLOCK_ROWS):
        hi = min(lo + _BLOCK_ROWS, count)
        diff = templates[lo:hi, None, :] - templates[None, :, :]
        if metric == "chebyshev":
            dist = np.abs(diff).max(axis=2)
            total += int((dist < r).sum())
        else:
            dist2 = np.square(diff).sum(axis=2)
            total += int((dist2 < r * r).sum())
        total -= hi - lo  # self-pairs sit at distance 0
    return total


def sample_entropy(values, params: ApEnParams = ApEnParams()) -> float:
    """SampEn(m, r) = -ln(A / B), in nats.

    A counts ordered template pairs i != j matching at length m+1 with
    strict d < r, B the same at length m; both index sets run over the
    N - m windows that exist at length m+1, so A <= B holds structurally.
    """
    x = ensure_series(values)
    m = params.m
    if x.size < m + 2:
        raise InsufficientDataError(
            f"SampEn with m={m} needs at least {m + 2} samples, got {x.size}"
        )
    short = sliding_window_view(x, m)[: x.size - m]
    full = sliding_window_view(x, m + 1)
    b = _pair_count(short, params.r, params.metric)
    a = _pair_count(full, params.r, params.metric)
    if a == 0 or b == 0:
        raise UndefinedEstimateError(
            f"SampEn undefined: no template pairs within r={params.r} "
            f"(A={a}, B={b})"
        )
    return float(-np.log(a / b))


def permutation_entropy(values, params: PermEnParams = PermEnParams()) -> float:
    """Shannon entropy of order-n ordinal patterns, in nats.

    Each window maps to the permutation that sorts it, ties broken by
    position (stable argsort); the result lies in [0, ln(order!)].
    """
    x = ensure_series(values)
    n = params.order
    if x.size < n:
        raise InsufficientDataError(
            f"PermEn with order={n} needs at least {n} samples, got {x.size}"
        )
    windows = sliding_window_view(x, n)
    patterns = np.argsort(windows, axis=1, kind="stable")
    codes = patterns @ (n ** np.arange(n, dtype=np.int64))
    _, counts = np.unique(codes, return_counts=True)
    p = counts / len(windows)
    return float(-(p * np.log(p)).sum())
