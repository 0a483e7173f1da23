"""Synthetic processes with known entropy rates.

All generators are deterministic functions of a 64-bit seed and standardise
the marginal process variance to sigma2 (where the process is stationary),
so estimates can be compared directly against the analytic rates.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import gammaln

from .core import derive_seed

PROCESS_KINDS = ("fgn", "arfima", "white", "mean_shift", "gaussian_walk")

_HURST_KINDS = ("fgn", "arfima")


@dataclass(frozen=True)
class ProcessSpec:
    kind: str
    length: int
    seed: int = 0
    hurst: float | None = None
    sigma2: float = 1.0
    period: int = 100

    def __post_init__(self):
        if self.kind not in PROCESS_KINDS:
            raise ValueError(f"kind must be one of {PROCESS_KINDS}, got {self.kind!r}")
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")
        if self.kind in _HURST_KINDS:
            if self.hurst is None or not 0.0 < self.hurst < 1.0:
                raise ValueError(
                    f"{self.kind} needs a Hurst parameter in (0, 1), got {self.hurst}"
                )
        # sigma2 = 0 is allowed only for mean_shift, as a noise-free test hook
        if not self.sigma2 > 0 and not (self.sigma2 == 0 and self.kind == "mean_shift"):
            raise ValueError(f"sigma2 must be > 0, got {self.sigma2}")
        if self.period < 1:
            raise ValueError(f"period must be >= 1, got {self.period}")

    def with_seed(self, seed: int) -> "ProcessSpec":
        return replace(self, seed=seed)


def fgn_autocovariance(lags, hurst: float, sigma2: float = 1.0) -> np.ndarray:
    """gamma(k) = sigma2/2 * (|k+1|^2H - 2|k|^2H + |k-1|^2H)."""
    k = np.abs(np.asarray(lags, dtype=np.float64))
    two_h = 2.0 * hurst
    return 0.5 * sigma2 * (
        np.abs(k + 1) ** two_h - 2.0 * k**two_h + np.abs(k - 1) ** two_h
    )


def gen_fgn(spec: ProcessSpec) -> np.ndarray:
    """Fractional Gaussian noise by circulant embedding (exact covariance).

    The autocovariance out to lag N is embedded in a circulant of size 2N
    whose FFT eigenvalues must be non-negative; they are for this covariance,
    and a guard raises if numerics ever say otherwise.
    """
    n = spec.length
    rng = np.random.default_rng(spec.seed)
    gamma = fgn_autocovariance(np.arange(n + 1), spec.hurst, spec.sigma2)
    row = np.concatenate([gamma, gamma[-2:0:-1]])  # size 2N, symmetric
    eig = np.fft.fft(row).real
    if eig.min() < -1e-8 * max(eig.max(), 1.0):
        raise ValueError(
            f"circulant embedding not non-negative definite for H={spec.hurst} "
            f"(min eigenvalue {eig.min():.3e})"
        )
    eig = np.clip(eig, 0.0, None)
    # Hermitian-symmetric complex Gaussian weights keep the IFFT real
    z = np.empty(2 * n, dtype=np.complex128)
    z[0] = rng.standard_normal()
    z[n] = rng.standard_normal()
    halves = rng.standard_normal((n - 1, 2)) / np.sqrt(2.0)
    z[1:n] = halves[:, 0] + 1j * halves[:, 1]
    z[n + 1 :] = np.conj(z[n - 1 : 0 : -1])
    coeff = np.sqrt(eig) * z
    return (np.sqrt(2 * n) * np.fft.ifft(coeff).real)[:n]


def gen_fgn_cholesky(spec: ProcessSpec) -> np.ndarray:
    """O(N^3) reference generator: Cholesky factor of the exact covariance.

    Small-N oracle for gen_fgn; shares nothing with the circulant path
    except the autocovariance formula.
    """
    from scipy.linalg import cholesky, toeplitz

    n = spec.length
    rng = np.random.default_rng(spec.seed)
    cov = toeplitz(fgn_autocovariance(np.arange(n), spec.hurst, spec.sigma2))
    return cholesky(cov, lower=True) @ rng.standard_normal(n)


def arfima_ma_weights(d: float, count: int) -> np.ndarray:
    """First ``count`` MA(inf) weights of (1-B)^-d: psi_0 = 1, psi_j = psi_{j-1} (j-1+d)/j."""
    j = np.arange(1, count, dtype=np.float64)
    return np.concatenate([[1.0], np.cumprod((j - 1.0 + d) / j)])


def gen_arfima(spec: ProcessSpec) -> np.ndarray:
    """ARFIMA(0, d, 0) with d = H - 1/2, via the truncated MA representation.

    The MA expansion is truncated at M = max(10 N, 10^4) and the first M
    outputs are discarded as burn-in.  Innovations are scaled by
    Gamma(1-d)^2 / Gamma(1-2d) so the emitted series has process variance
    sigma2, matching the analytic rate's convention; at d = 0 this is
    plain white noise with variance sigma2.
    """
    n = spec.length
    d = spec.hurst - 0.5
    rng = np.random.default_rng(spec.seed)
    trunc = max(10 * n, 10_000)
    psi = arfima_ma_weights(d, trunc + 1)
    innov_var = spec.sigma2 * np.exp(2.0 * gammaln(1.0 - d) - gammaln(1.0 - 2.0 * d))
    eps = np.sqrt(innov_var) * rng.standard_normal(n + trunc)
    return fftconvolve(eps, psi)[trunc : trunc + n]


def gen_white(spec: ProcessSpec) -> np.ndarray:
    rng = np.random.default_rng(spec.seed)
    return np.sqrt(spec.sigma2) * rng.standard_normal(spec.length)


def square_wave(length: int, period: int = 100) -> np.ndarray:
    """0/1 mean level alternating every ``period`` samples, starting at 0."""
    return ((np.arange(length) // period) % 2).astype(np.float64)


def gen_mean_shift(spec: ProcessSpec) -> np.ndarray:
    """Gaussian noise around a 0/1 square-wave mean (period default 100)."""
    rng = np.random.default_rng(spec.seed)
    return square_wave(spec.length, spec.period) + np.sqrt(
        spec.sigma2
    ) * rng.standard_normal(spec.length)


def gen_gaussian_walk(spec: ProcessSpec) -> np.ndarray:
    """Cumulative sum of i.i.d. N(0, sigma2) increments."""
    rng = np.random.default_rng(spec.seed)
    return np.cumsum(np.sqrt(spec.sigma2) * rng.standard_normal(spec.length))


_GENERATORS = {
    "fgn": gen_fgn,
    "arfima": gen_arfima,
    "white": gen_white,
    "mean_shift": gen_mean_shift,
    "gaussian_walk": gen_gaussian_walk,
}


def generate(spec: ProcessSpec) -> np.ndarray:
    """Dispatch to the generator for ``spec.kind``."""
    return _GENERATORS[spec.kind](spec)


def write_series_csv(values, fp) -> None:
    """Write a series as single-column CSV with header ``value``."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(["value"])
    for v in np.asarray(values, dtype=np.float64):
        writer.writerow([repr(float(v))])


def series_to_csv(values) -> str:
    buf = io.StringIO()
    write_series_csv(values, buf)
    return buf.getvalue()


def read_series_csv(fp) -> np.ndarray:
    """Parse a single-column ``value`` CSV, reporting bad lines by number."""
    reader = csv.reader(fp)
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["value"]:
        raise ValueError(f"expected header 'value', got {header!r} on line 1")
    out = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 1:
            raise ValueError(f"expected a single column on line {lineno}, got {len(row)}")
        try:
            out.append(float(row[0]))
        except ValueError:
            raise ValueError(f"not a number on line {lineno}: {row[0]!r}") from None
    return np.asarray(out, dtype=np.float64)


__all__ = [
    "PROCESS_KINDS",
    "ProcessSpec",
    "arfima_ma_weights",
    "derive_seed",
    "fgn_autocovariance",
    "gen_arfima",
    "gen_fgn",
    "gen_fgn_cholesky",
    "gen_gaussian_walk",
    "gen_mean_shift",
    "gen_white",
    "generate",
    "read_series_csv",
    "series_to_csv",
    "square_wave",
    "write_series_csv",
]
