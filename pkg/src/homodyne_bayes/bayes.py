"""Grid-based Bayesian inference of the phase shift from homodyne batches.

The posterior over [0, pi/2] (flat prior 2/pi) is evaluated in log space on a
uniform grid, exponentiated after max-subtraction, and normalized by
trapezoidal quadrature, so batches of up to millions of outcomes neither
overflow nor underflow.  The likelihood depends on the data only through
(count, sum of squares); everything here consumes exactly that pair.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO

import numpy as np

from .fisher import NonIdentifiableError, fisher_homodyne
from .measurement import HomodyneBatch, homodyne_variance, variance_profile
from .probe import HALF_PI, require_phase_range

DEFAULT_GRID_SIZE = 2048
_MIN_GRID_SIZE = 64

FULL_SUPPORT = (0.0, HALF_PI)


@dataclass(frozen=True, eq=False)
class PosteriorGrid:
    """Discretized posterior density with its summary statistics.

    ``log_density`` is the unnormalized log posterior (full log-likelihood,
    constants included); ``density`` integrates to 1 over ``phis`` under the
    trapezoid rule.  ``log_norm`` is the log of the normalization constant;
    the raw constant is exposed as ``norm`` but may over/underflow as a float
    for very large batches, which is why the log is what gets stored.
    ``degenerate`` flags the data-free (flat prior) case, whose mode is
    reported as the support midpoint.
    """

    phis: np.ndarray
    log_density: np.ndarray
    density: np.ndarray
    log_norm: float
    mean: float
    mode: float
    variance: float
    degenerate: bool = False

    @property
    def norm(self) -> float:
        try:
            return math.exp(self.log_norm)
        except OverflowError:
            return math.inf

    def write_csv(self, fh: IO[str]) -> None:
        """Serialize as 'phi,density' rows (repr floats, round-trip exact)."""
        fh.write("phi,density\r\n")
        for phi, dens in zip(self.phis, self.density):
            fh.write(f"{float(phi)!r},{float(dens)!r}\r\n")


def _refined_mode(phis: np.ndarray, log_dens: np.ndarray) -> float:
    """Grid argmax (first index on ties) with 3-point quadratic refinement."""
    i = int(np.argmax(log_dens))
    if 0 < i < phis.size - 1:
        a, b, c = log_dens[i - 1], log_dens[i], log_dens[i + 1]
        curvature = a - 2.0 * b + c
        if curvature < 0.0:
            offset = 0.5 * (a - c) / curvature
            offset = min(max(offset, -0.5), 0.5)
            return float(phis[i] + offset * (phis[1] - phis[0]))
    return float(phis[i])


def posterior_from_stats(
    count: int,
    sum_sq: float,
    r: float,
    grid_size: int = DEFAULT_GRID_SIZE,
    support: tuple[float, float] = FULL_SUPPORT,
) -> PosteriorGrid:
    """Posterior from the sufficient statistic (count, sum of squares).

    ``support`` restricts the flat prior to a window inside [0, pi/2] (used by
    the translated second stage of the adaptive protocols); the default is the
    full prior range.
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count!r}")
    if not math.isfinite(sum_sq) or sum_sq < 0.0:
        raise ValueError(f"sum_sq must be finite and >= 0, got {sum_sq!r}")
    if grid_size < _MIN_GRID_SIZE:
        raise ValueError(f"grid_size must be >= {_MIN_GRID_SIZE}, got {grid_size!r}")
    lo = require_phase_range(support[0], "support lower edge")
    hi = require_phase_range(support[1], "support upper edge")
    if not lo < hi:
        raise ValueError(f"support window must have positive width, got {support!r}")

    phis = np.linspace(lo, hi, int(grid_size))
    if count == 0:
        log_density = np.zeros_like(phis)
    else:
        var = variance_profile(r, phis)
        log_density = -(count / 2.0) * np.log(2.0 * math.pi * var) - sum_sq / (2.0 * var)

    shift = float(log_density.max())
    unnorm = np.exp(log_density - shift)
    z = float(np.trapezoid(unnorm, phis))
    density = unnorm / z
    mean = float(np.trapezoid(phis * density, phis))
    variance = max(float(np.trapezoid((phis - mean) ** 2 * density, phis)), 0.0)

    degenerate = count == 0
    mode = 0.5 * (lo + hi) if degenerate else _refined_mode(phis, log_density)

    return PosteriorGrid(
        phis=phis,
        log_density=log_density,
        density=density,
        log_norm=shift + math.log(z),
        mean=mean,
        mode=mode,
        variance=variance,
        degenerate=degenerate,
    )


def posterior_from_batch(
    batch: HomodyneBatch,
    r: float,
    grid_size: int = DEFAULT_GRID_SIZE,
    support: tuple[float, float] = FULL_SUPPORT,
) -> PosteriorGrid:
    """Posterior over the phase given a homodyne batch taken at squeezing r.

    An empty batch returns the flat prior (density 2/pi on the full support).
    """
    return posterior_from_stats(batch.count, batch.sum_sq, r, grid_size, support)


def asymptotic_posterior(
    r: float, phi_star: float, m: int, grid_size: int = DEFAULT_GRID_SIZE
) -> PosteriorGrid:
    """Large-sample posterior for true phase phi_star and m outcomes.

    Substitutes the expected sufficient statistic m * Sigma^2(phi_star) into
    the batch posterior, so it agrees exactly with ``posterior_from_stats``
    on that input.  Its mode sits at phi_star for every m >= 1.
    """
    phi_star = require_phase_range(phi_star, "phi_star")
    if not 0.0 < phi_star < HALF_PI:
        raise ValueError(f"phi_star must be interior to (0, pi/2), got {phi_star!r}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m!r}")
    expected_sum_sq = m * homodyne_variance(r, phi_star)
    return posterior_from_stats(int(m), expected_sum_sq, r, grid_size)


def gaussian_approx_variance(r: float, phi_star: float, m: int) -> float:
    """Variance of the Gaussian local approximation: 1/(m F_H(r, phi_star))."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m!r}")
    fh = fisher_homodyne(r, phi_star)
    if fh <= 0.0:
        raise NonIdentifiableError(
            f"no phase information at (r={r}, phi={phi_star}); "
            "the Gaussian approximation is undefined"
        )
    return 1.0 / (m * fh)


def posterior_to_gaussian_ratio(
    r: float, phi_star: float, m: int, grid_size: int = DEFAULT_GRID_SIZE
) -> float:
    """Exact grid-posterior variance over the Gaussian-approximation variance.

    Tends to 1 as m grows; how fast depends on how close phi_star is to the
    optimal operating point.
    """
    grid = asymptotic_posterior(r, phi_star, m, grid_size)
    return grid.variance / gaussian_approx_variance(r, phi_star, m)


def skewness(grid: PosteriorGrid) -> float:
    """Pearson-style asymmetry |mean - mode| / sqrt(variance) of a posterior."""
    if grid.variance <= 0.0:
        raise ValueError("skewness needs a posterior with positive variance")
    return abs(grid.mean - grid.mode) / math.sqrt(grid.variance)


__all__ = [
    "DEFAULT_GRID_SIZE",
    "FULL_SUPPORT",
    "PosteriorGrid",
    "posterior_from_stats",
    "posterior_from_batch",
    "asymptotic_posterior",
    "gaussian_approx_variance",
    "posterior_to_gaussian_ratio",
    "skewness",
]
