"""Seeded Monte Carlo harness: sweep the measurement budget, repeat runs,
aggregate accuracy and variance ratios, and serialize the results.

Per budget M the harness reports A = mean(posterior mean) / phi_star and
V = sqrt(mean(posterior variance) * M * qfi(r)), i.e. the root ratio of the
achieved variance to the M-shot quantum optimum, so V -> 1 signals
saturation.  Ratios are averaged over repetitions with delta-method standard
errors.

Each (M, repetition) run draws from an independent stream derived from the
master seed, so results are bit-reproducible and independent of execution
order.  Failed runs (non-identifiable rough estimates) are recorded, never
raised; aggregates are computed over the surviving runs.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable

import numpy as np

from .adaptive import Scheme, run_two_step
from .bayes import DEFAULT_GRID_SIZE
from .fisher import NonIdentifiableError, qfi
from .probe import require_phase_range
from .rng import child_seed

CSV_COLUMNS = ("M", "A", "A_stderr", "V", "V_stderr", "mean_rough", "clamp_count")


@dataclass(frozen=True)
class ExperimentConfig:
    r: float
    phi_star: float
    m_values: tuple[int, ...]
    repetitions: int = 20
    scheme: Scheme = Scheme.NONE
    seed: int = 0
    grid_size: int = DEFAULT_GRID_SIZE
    n_rough: int | None = None  # None = floor(3 sqrt(M)) rule

    def __post_init__(self) -> None:
        if not math.isfinite(self.r) or self.r < 0.0:
            raise ValueError(f"r must be finite and >= 0, got {self.r!r}")
        phi = require_phase_range(self.phi_star, "phi_star")
        if phi <= 0.0:
            raise ValueError("phi_star must be positive so the A ratio is defined")
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        object.__setattr__(self, "m_values", tuple(int(m) for m in self.m_values))
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions!r}")
        if any(b <= a for a, b in zip(self.m_values, self.m_values[1:])):
            raise ValueError("m_values must be strictly increasing")
        if self.scheme is not Scheme.NONE and any(m < 16 for m in self.m_values):
            raise ValueError("adaptive schemes need every m >= 16")
        if self.n_rough is not None and self.n_rough < 1:
            raise ValueError(f"n_rough must be >= 1 when fixed, got {self.n_rough!r}")


@dataclass(frozen=True)
class RunRecord:
    """One (budget, repetition) run; failures carry an error string and NaNs."""

    m: int
    repetition: int
    seed: int
    mean: float
    variance: float
    rough_estimate: float
    clamped: bool
    error: str | None = None


@dataclass(frozen=True)
class AggregateRow:
    m: int
    a_ratio: float
    a_stderr: float
    v_ratio: float
    v_stderr: float
    mean_rough: float
    clamp_count: int
    ensemble_var: float
    n_ok: int


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    config: ExperimentConfig
    runs: tuple[RunRecord, ...] = field(repr=False)
    aggregates: tuple[AggregateRow, ...]

    def __post_init__(self) -> None:
        reps = self.config.repetitions
        for m in self.config.m_values:
            n = sum(1 for rec in self.runs if rec.m == m)
            if n != reps:
                raise ValueError(f"m = {m} has {n} runs, expected {reps}")
        if tuple(row.m for row in self.aggregates) != self.config.m_values:
            raise ValueError("aggregates must cover m_values in order")


def log_m_grid(m_min: int, m_max: int, points: int) -> tuple[int, ...]:
    """Distinct integers spanning [m_min, m_max] evenly on a log scale."""
    if m_min < 1 or m_max < m_min or points < 1:
        raise ValueError("need 1 <= m_min <= m_max and points >= 1")
    if points == 1 or m_min == m_max:
        return (m_min,) if m_min == m_max else (m_min, m_max)
    grid = np.exp(np.linspace(math.log(m_min), math.log(m_max), points))
    return tuple(int(v) for v in np.unique(np.rint(grid).astype(int)))


def _mean(values: list[float]) -> float:
    return math.fsum(values) / len(values) if values else math.nan

def _sample_var(values: list[float]) -> float:
    # unbiased (ddof=1); NaN when fewer than two points
    if len(values) < 2:
        return math.nan
    mu = _mean(values)
    return math.fsum((v - mu) ** 2 for v in values) / (len(values) - 1)


def _aggregate(config: ExperimentConfig, m: int, records: list[RunRecord]) -> AggregateRow:
    ok = [rec for rec in records if rec.error is None]
    means = [rec.mean for rec in ok]
    variances = [rec.variance for rec in ok]
    roughs = [rec.rough_estimate for rec in ok if math.isfinite(rec.rough_estimate)]
    clamp_count = sum(1 for rec in ok if rec.clamped)

    if not ok:
        return AggregateRow(m, math.nan, math.nan, math.nan, math.nan,
                            math.nan, clamp_count, math.nan, 0)

    n = len(ok)
    mean_phi = _mean(means)
    a_ratio = mean_phi / config.phi_star
    a_stderr = math.sqrt(_sample_var(means) / n) / config.phi_star if n >= 2 else math.nan

    scale = m * qfi(config.r)  # inverse of the M-shot optimal variance
    mean_var = _mean(variances)
    v_ratio = math.sqrt(mean_var * scale)
    if n >= 2 and v_ratio > 0.0:
        v_stderr = math.sqrt(_sample_var(variances) / n) * scale / (2.0 * v_ratio)
    else:
        v_stderr = math.nan

    return AggregateRow(
        m=m,
        a_ratio=a_ratio,
        a_stderr=a_stderr,
        v_ratio=v_ratio,
        v_stderr=v_stderr,
        mean_rough=_mean(roughs),
        clamp_count=clamp_count,
        ensemble_var=_sample_var(means),
        n_ok=n,
    )


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Execute the full sweep; bit-reproducible for a fixed config."""
    runs: list[RunRecord] = []
    aggregates: list[AggregateRow] = []
    for m in config.m_values:
        per_m: list[RunRecord] = []
        for rep in range(config.repetitions):
            run_seed = child_seed(config.seed, m, rep)
            try:
                mean, variance, plan = run_two_step(
                    config.scheme,
                    config.r,
                    config.phi_star,
                    m,
                    run_seed,
                    grid_size=config.grid_size,
                    n_rough=config.n_rough,
                )
                rec = RunRecord(m, rep, run_seed, mean, variance,
                                plan.rough_estimate, plan.clamped)
            except NonIdentifiableError as exc:
                rec = RunRecord(m, rep, run_seed, math.nan, math.nan,
                                math.nan, False, error=str(exc))
            per_m.append(rec)
        runs.extend(per_m)
        aggregates.append(_aggregate(config, m, per_m))
    return ExperimentResult(config=config, runs=tuple(runs), aggregates=tuple(aggregates))


def _fmt(value: float) -> str:
    # repr round-trips exactly, keeping the CSV byte-stable and lossless
    return repr(float(value))


def _write_rows(fh: IO[str], rows: Iterable[AggregateRow]) -> None:
    writer = csv.writer(fh)  # csv default line terminator is CRLF (RFC 4180)
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([
            str(row.m),
            _fmt(row.a_ratio),
            _fmt(row.a_stderr),
            _fmt(row.v_ratio),
            _fmt(row.v_stderr),
            _fmt(row.mean_rough),
            str(row.clamp_count),
        ])


def emit_csv(result: ExperimentResult, path) -> None:
    """Write the per-M aggregate table; values round-trip losslessly."""
    if hasattr(path, "write"):
        _write_rows(path, result.aggregates)
        return
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            _write_rows(fh, result.aggregates)
    except OSError as exc:
        raise OSError(f"cannot write experiment CSV to {path!r}: {exc}") from exc


def _jsonable(value: float) -> float | None:
    return value if math.isfinite(value) else None


def result_document(result: ExperimentResult) -> dict:
    """JSON-ready dict equivalent to the CSV, plus per-run records and the
    ensemble variance of the posterior means."""
    cfg = result.config
    return {
        "config": {
            "r": cfg.r,
            "phi_star": cfg.phi_star,
            "m_values": list(cfg.m_values),
            "repetitions": cfg.repetitions,
            "scheme": cfg.scheme.value,
            "seed": cfg.seed,
            "grid_size": cfg.grid_size,
            "n_rough": cfg.n_rough,
        },
        "aggregates": [
            {
                "m": row.m,
                "A": _jsonable(row.a_ratio),
                "A_stderr": _jsonable(row.a_stderr),
                "V": _jsonable(row.v_ratio),
                "V_stderr": _jsonable(row.v_stderr),
                "mean_rough": _jsonable(row.mean_rough),
                "clamp_count": row.clamp_count,
                "ensemble_var": _jsonable(row.ensemble_var),
                "n_ok": row.n_ok,
            }
            for row in result.aggregates
        ],
        "runs": [
            {
                "m": rec.m,
                "repetition": rec.repetition,
                "seed": rec.seed,
                "mean": _jsonable(rec.mean),
                "variance": _jsonable(rec.variance),
                "rough_estimate": _jsonable(rec.rough_estimate),
                "clamped": rec.clamped,
                "error": rec.error,
            }
            for rec in result.runs
        ],
    }


def emit_json(result: ExperimentResult, path) -> None:
    doc = result_document(result)
    if hasattr(path, "write"):
        json.dump(doc, path, indent=2)
        path.write("\n")
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write experiment JSON to {path!r}: {exc}") from exc


__all__ = [
    "CSV_COLUMNS",
    "ExperimentConfig",
    "RunRecord",
    "AggregateRow",
    "ExperimentResult",
    "log_m_grid",
    "run_experiment",
    "emit_csv",
    "emit_json",
    "result_document",
]
