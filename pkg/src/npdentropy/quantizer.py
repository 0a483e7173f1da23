"""Uniform quantisation of real-valued series onto signed integer symbols.

Bins are half-open intervals [origin + s*delta, origin + (s+1)*delta); a
sample exactly on an edge belongs to the upper bin.  Symbols are unbounded
signed integers, so no clipping ever occurs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ensure_series


@dataclass(frozen=True)
class QuantizerConfig:
    delta: float
    origin: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.delta) or self.delta <= 0.0:
            raise ValueError(f"delta must be finite and > 0, got {self.delta}")
        if not np.isfinite(self.origin):
            raise ValueError(f"origin must be finite, got {self.origin}")


@dataclass(frozen=True)
class SymbolSeries:
    """Integer symbol sequence together with the config that produced it."""

    symbols: np.ndarray
    config: QuantizerConfig

    def __len__(self) -> int:
        return len(self.symbols)


def quantize(values, config: QuantizerConfig) -> SymbolSeries:
    """Map each sample x to the symbol floor((x - origin) / delta).

    Every emitted symbol s satisfies
    origin + s*delta <= x < origin + (s+1)*delta.
    """
    x = ensure_series(values)
    s = np.floor((x - config.origin) / config.delta).astype(np.int64)
    # floor of the rounded quotient can land one bin off when x sits within
    # an ulp of a bin edge; one correction pass restores the containment
    # guarantee exactly.
    np.subtract(s, x < config.origin + s * config.delta, out=s)
    np.add(s, x >= config.origin + (s + 1) * config.delta, out=s)
    s.setflags(write=False)
    return SymbolSeries(s, config)
