"""Experiment runner: Hurst sweeps, quantiser sweeps, and timing tables.

``run_sweep`` turns a declarative :class:`ExperimentConfig` into a flat
result table with one row per (process, hurst, estimator) cell.  Each cell
aggregates ``replications`` independently seeded series; a series is
generated once per replication and shared by every estimator, so the
estimator columns of a row describe the same sample paths.

Determinism contract: replication ``r`` at grid point ``g`` always uses
``derive_seed(base_seed, g, r)``, and values are accumulated in replication
order no matter which worker finished first.  The same config therefore
produces byte-identical CSV/JSON output at any worker count.  Timing tables
from :func:`run_bench` are the one exception; wall clocks are not seeds.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .analytic import arfima_entropy_rate, fgn_entropy_rate
from .baselines import METRICS, ApEnParams, PermEnParams
from .baselines import approximate_entropy, permutation_entropy, sample_entropy
from .core import ESTIMATOR_IDS, derive_seed, summarize
from .npd import npd_entropy
from .processes import PROCESS_KINDS, ProcessSpec, generate
from .quantizer import QuantizerConfig

SWEEP_COLUMNS = (
    "process",
    "hurst",
    "estimator",
    "delta",
    "mean_nats",
    "variance",
    "analytic_nats",
    "replications",
    "failures",
)

_HURST_KINDS = ("fgn", "arfima")
_WARMUP_CALLS = 3


class ConfigError(ValueError):
    """Raised when a sweep config file is malformed; names the bad field."""


@dataclass(frozen=True)
class EstimatorSpec:
    """One estimator column of a sweep.

    Only the fields relevant to ``estimator_id`` are consulted: ``delta``
    for npd, ``m``/``r``/``metric`` for apen and sampen, ``order`` for
    permen.  The rest keep their defaults and are ignored.
    """

    estimator_id: str
    delta: float = 1.0
    m: int = 3
    r: float = 0.2
    metric: str = "chebyshev"
    order: int = 3

    def __post_init__(self) -> None:
        if self.estimator_id not in ESTIMATOR_IDS:
            raise ValueError(
                f"unknown estimator id {self.estimator_id!r}, "
                f"valid ids: {', '.join(ESTIMATOR_IDS)}"
            )
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if not self.r > 0:
            raise ValueError(f"r must be positive, got {self.r}")
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")
        if self.order < 2:
            raise ValueError(f"order must be >= 2, got {self.order}")

    def params(self) -> dict:
        """The parameter subset that actually drives this estimator."""
        if self.estimator_id == "npd":
            return {"delta": self.delta}
        if self.estimator_id == "permen":
            return {"order": self.order}
        return {"m": self.m, "r": self.r, "metric": self.metric}


def evaluate_estimator(spec: EstimatorSpec, values) -> float:
    """Run one estimator on one series, result in nats."""
    if spec.estimator_id == "npd":
        return npd_entropy(values, QuantizerConfig(delta=spec.delta))
    if spec.estimator_id == "apen":
        return approximate_entropy(
            values, ApEnParams(m=spec.m, r=spec.r, metric=spec.metric)
        )
    if spec.estimator_id == "sampen":
        return sample_entropy(
            values, ApEnParams(m=spec.m, r=spec.r, metric=spec.metric)
        )
    return permutation_entropy(values, PermEnParams(order=spec.order))


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative sweep description.

    ``processes`` are templates: their ``length`` is replaced by
    ``series_length``, their ``seed`` by a derived per-replication seed,
    and for fgn/arfima their ``hurst`` by each value of ``hurst_grid`` in
    turn.  ``output``/``format`` record where a CLI run should land; the
    pure :func:`run_sweep` ignores them.
    """

    processes: tuple[ProcessSpec, ...]
    estimators: tuple[EstimatorSpec, ...]
    hurst_grid: tuple[float, ...] = ()
    replications: int = 50
    series_length: int = 2000
    base_seed: int = 0
    workers: int = 1
    output: str | None = None
    format: str = "csv"

    def __post_init__(self) -> None:
        object.__setattr__(self, "processes", tuple(self.processes))
        object.__setattr__(self, "estimators", tuple(self.estimators))
        object.__setattr__(self, "hurst_grid", tuple(float(h) for h in self.hurst_grid))
        if not self.processes:
            raise ValueError("process grid is empty")
        if not self.estimators:
            raise ValueError("estimator list is empty")
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")
        if self.series_length < 1:
            raise ValueError(f"series_length must be >= 1, got {self.series_length}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be 'csv' or 'json', got {self.format!r}")
        needs_hurst = any(p.kind in _HURST_KINDS for p in self.processes)
        if needs_hurst and not self.hurst_grid:
            raise ValueError("hurst_grid is required when sweeping fgn or arfima")
        if self.hurst_grid and not needs_hurst:
            raise ValueError("hurst_grid given but no process consumes it")
        for h in self.hurst_grid:
            if not 0.0 < h < 1.0:
                raise ValueError(f"hurst_grid values must lie in (0, 1), got {h}")


@dataclass(frozen=True)
class SweepRow:
    """One (process, hurst, estimator) cell of a sweep result.

    ``replications`` counts the values the mean is taken over; together
    with ``failures`` it sums to the configured replication count.  Fields
    that do not apply (hurst for white noise, delta for non-npd rows,
    variance below two successes) are ``None`` and serialise empty.
    """

    process: str
    hurst: float | None
    estimator: str
    delta: float | None
    mean_nats: float | None
    variance: float | None
    analytic_nats: float | None
    replications: int
    failures: int

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in SWEEP_COLUMNS}


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in self.rows:
            writer.writerow(
                ["" if v is None else repr(v) if isinstance(v, float) else v
                 for v in (getattr(row, name) for name in SWEEP_COLUMNS)]
            )
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps([row.as_dict() for row in self.rows], indent=2) + "\n"

    def rendered(self, format: str) -> str:
        return self.to_csv() if format == "csv" else self.to_json()


def _grid(config: ExperimentConfig) -> list[ProcessSpec]:
    """Expand process templates against the hurst grid, in config order."""
    points = []
    for template in config.processes:
        if template.kind in _HURST_KINDS:
            for h in config.hurst_grid:
                points.append(
                    replace(template, length=config.series_length, hurst=h)
                )
        else:
            points.append(replace(template, length=config.series_length))
    return points


def _run_cell(config: ExperimentConfig, point: ProcessSpec, g: int, r: int) -> list:
    """All estimators on replication r of grid point g; None marks a failure."""
    series = generate(point.with_seed(derive_seed(config.base_seed, g, r)))
    out = []
    for spec in config.estimators:
        try:
            out.append(evaluate_estimator(spec, series))
        except (ArithmeticError, ValueError):
            out.append(None)
    return out


def _analytic_reference(point: ProcessSpec) -> float | None:
    if point.kind == "fgn":
        return fgn_entropy_rate(point.hurst, point.sigma2)
    if point.kind == "arfima":
        return arfima_entropy_rate(point.hurst, point.sigma2)
    return None


def run_sweep(config: ExperimentConfig) -> SweepResult:
    """Run the full grid; estimator failures become per-row failure counts."""
    grid = _grid(config)
    tasks = [(g, r) for g in range(len(grid)) for r in range(config.replications)]

    # slots[g][r][e]; indexed assignment keeps accumulation order fixed
    # regardless of which worker finishes first.
    slots = [[None] * config.replications for _ in grid]
    if config.workers == 1:
        for g, r in tasks:
            slots[g][r] = _run_cell(config, grid[g], g, r)
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = pool.map(
                lambda task: _run_cell(config, grid[task[0]], *task), tasks
            )
            for (g, r), cell in zip(tasks, results):
                slots[g][r] = cell

    rows = []
    for g, point in enumerate(grid):
        hurst = point.hurst if point.kind in _HURST_KINDS else None
        analytic = _analytic_reference(point)
        for e, spec in enumerate(config.estimators):
            values = [slots[g][r][e] for r in range(config.replications)]
            successes = [v for v in values if v is not None]
            if len(successes) >= 2:
                mean, variance = summarize(successes)
            elif successes:
                mean, variance = successes[0], None
            else:
                mean, variance = None, None
            rows.append(
                SweepRow(
                    process=point.kind,
                    hurst=hurst,
                    estimator=spec.estimator_id,
                    delta=spec.delta if spec.estimator_id == "npd" else None,
                    mean_nats=mean,
                    variance=variance,
                    analytic_nats=analytic,
                    replications=len(successes),
                    failures=len(values) - len(successes),
                )
            )
    return SweepResult(rows=tuple(rows))


@dataclass(frozen=True)
class BenchRow:
    estimator_id: str
    trials: int
    total_seconds: float
    per_call_seconds: float


def run_bench(
    estimators,
    series_length: int = 1000,
    trials: int = 10,
    base_seed: int = 0,
) -> tuple[BenchRow, ...]:
    """Wall-clock each estimator on fresh white noise.

    Per estimator: three discarded warm-up calls, then ``trials`` timed
    calls on independently seeded inputs.  Generation happens outside the
    timed region, so per_call_seconds is estimator time only.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rows = []
    for e, spec in enumerate(estimators):
        for w in range(_WARMUP_CALLS):
            noise = generate(
                ProcessSpec("white", series_length, derive_seed(base_seed, e, trials + w))
            )
            evaluate_estimator(spec, noise)
        total = 0.0
        for t in range(trials):
            noise = generate(
                ProcessSpec("white", series_length, derive_seed(base_seed, e, t))
            )
            start = time.perf_counter()
            evaluate_estimator(spec, noise)
            total += time.perf_counter() - start
        rows.append(BenchRow(spec.estimator_id, trials, total, total / trials))
    return tuple(rows)


def bench_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["estimator", "trials", "total_seconds", "per_call_seconds"])
    for row in rows:
        writer.writerow(
            [row.estimator_id, row.trials, repr(row.total_seconds), repr(row.per_call_seconds)]
        )
    return buf.getvalue()


def _require(table: dict, key: str, kinds, where: str):
    if key not in table:
        raise ConfigError(f"{where}: missing required key {key!r}")
    return _typed(table, key, kinds, where, table[key])


def _typed(table: dict, key: str, kinds, where: str, default):
    value = table.get(key, default)
    if isinstance(value, bool):  # bool subclasses int; reject it explicitly
        raise ConfigError(f"{where}: key {key!r} must not be a boolean")
    if value is not None and not isinstance(value, kinds):
        names = kinds.__name__ if isinstance(kinds, type) else "/".join(
            k.__name__ for k in kinds
        )
        raise ConfigError(f"{where}: key {key!r} must be {names}, got {type(value).__name__}")
    return value


def _reject_unknown(table: dict, allowed, where: str) -> None:
    for key in table:
        if key not in allowed:
            raise ConfigError(f"{where}: unknown key {key!r} (allowed: {', '.join(allowed)})")


_TOP_KEYS = (
    "process", "estimator", "hurst", "replications", "series_length",
    "base_seed", "workers", "output", "format",
)
_PROCESS_KEYS = ("kind", "sigma2", "period")
_ESTIMATOR_KEYS = ("id", "delta", "m", "r", "metric", "order")


def parse_config(raw: dict) -> ExperimentConfig:
    """Build an ExperimentConfig from a decoded TOML table.

    Unknown keys are rejected by name rather than silently ignored; a typo
    in a sweep config should fail loudly, not run a different experiment.
    """
    _reject_unknown(raw, _TOP_KEYS, "config")
    hurst_raw = _typed(raw, "hurst", list, "config", [])
    hurst_grid = []
    for i, h in enumerate(hurst_raw):
        if not isinstance(h, (int, float)) or isinstance(h, bool):
            raise ConfigError(f"config: hurst[{i}] must be a number, got {h!r}")
        hurst_grid.append(float(h))

    process_tables = _require(raw, "process", list, "config")
    processes = []
    for i, table in enumerate(process_tables):
        where = f"config: process[{i}]"
        if not isinstance(table, dict):
            raise ConfigError(f"{where} must be a table")
        _reject_unknown(table, _PROCESS_KEYS, where)
        kind = _require(table, "kind", str, where)
        if kind not in PROCESS_KINDS:
            raise ConfigError(
                f"{where}: unknown kind {kind!r} (valid: {', '.join(PROCESS_KINDS)})"
            )
        if kind in _HURST_KINDS and not hurst_grid:
            raise ConfigError(f"{where}: kind {kind!r} needs a top-level hurst grid")
        try:
            processes.append(
                ProcessSpec(
                    kind=kind,
                    length=2,  # placeholder, replaced by series_length
                    hurst=hurst_grid[0] if kind in _HURST_KINDS else None,
                    sigma2=float(_typed(table, "sigma2", (int, float), where, 1.0)),
                    period=_typed(table, "period", int, where, 100),
                )
            )
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None

    estimator_tables = _require(raw, "estimator", list, "config")
    estimators = []
    for i, table in enumerate(estimator_tables):
        where = f"config: estimator[{i}]"
        if not isinstance(table, dict):
            raise ConfigError(f"{where} must be a table")
        _reject_unknown(table, _ESTIMATOR_KEYS, where)
        try:
            estimators.append(
                EstimatorSpec(
                    estimator_id=_require(table, "id", str, where),
                    delta=float(_typed(table, "delta", (int, float), where, 1.0)),
                    m=_typed(table, "m", int, where, 3),
                    r=float(_typed(table, "r", (int, float), where, 0.2)),
                    metric=_typed(table, "metric", str, where, "chebyshev"),
                    order=_typed(table, "order", int, where, 3),
                )
            )
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None

    try:
        return ExperimentConfig(
            processes=tuple(processes),
            estimators=tuple(estimators),
            hurst_grid=tuple(hurst_grid),
            replications=_typed(raw, "replications", int, "config", 50),
            series_length=_typed(raw, "series_length", int, "config", 2000),
            base_seed=_typed(raw, "base_seed", int, "config", 0),
            workers=_typed(raw, "workers", int, "config", 1),
            output=_typed(raw, "output", str, "config", None),
            format=_typed(raw, "format", str, "config", "csv"),
        )
    except ValueError as exc:
        raise ConfigError(f"config: {exc}") from None


def load_config(path) -> ExperimentConfig:
    """Read and validate a TOML sweep config file."""
    with open(path, "rb") as fp:
        try:
            raw = tomllib.load(fp)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
    return parse_config(raw)


__all__ = [
    "BenchRow",
    "ConfigError",
    "EstimatorSpec",
    "ExperimentConfig",
    "SWEEP_COLUMNS",
    "SweepResult",
    "SweepRow",
    "bench_to_csv",
    "evaluate_estimator",
    "load_config",
    "parse_config",
    "run_bench",
    "run_sweep",
]
