"""Likelihoods and seeded samplers for homodyne and double-homodyne detection.

The homodyne outcome for the phase-shifted squeezed probe is a zero-mean
Gaussian whose variance depends on the unknown phase; all Bayesian inference
downstream consumes only (count, sum of squares), which is the sufficient
statistic of that family.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .probe import HALF_PI, VACUUM_VARIANCE, require_phase_range

# One homodyne outcome (quadrature units). Kept as a plain float: batches
# validate finiteness on construction.
QuadratureSample = float


def homodyne_variance(r: float, phi: float) -> float:
    """Variance of the psi = 0 homodyne outcome at phase shift phi.

    (e^{-2r} cos^2 phi + e^{2r} sin^2 phi) / 4; strictly increasing in phi on
    (0, pi/2) for r > 0, from e^{-2r}/4 up to e^{2r}/4.
    """
    phi = require_phase_range(phi)
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"squeezing magnitude r must be finite and >= 0, got {r!r}")
    return VACUUM_VARIANCE * (
        math.exp(-2.0 * r) * math.cos(phi) ** 2 + math.exp(2.0 * r) * math.sin(phi) ** 2
    )


def variance_profile(r: float, phis: np.ndarray) -> np.ndarray:
    """Vectorized ``homodyne_variance`` over an array of phases (unvalidated)."""
    return VACUUM_VARIANCE * (
        np.exp(-2.0 * r) * np.cos(phis) ** 2 + np.exp(2.0 * r) * np.sin(phis) ** 2
    )


def homodyne_logpdf(x, r: float, phi: float):
    """Log-density of the homodyne outcome: N(0, homodyne_variance(r, phi)).

    ``x`` may be a scalar or a numpy array; the return value matches.
    """
    var = homodyne_variance(r, phi)
    return -0.5 * np.log(2.0 * math.pi * var) - np.square(x) / (2.0 * var)


@dataclass(frozen=True, eq=False)
class HomodyneBatch:
    """An ordered homodyne sample with its sufficient statistic.

    ``sum_sq`` is computed with math.fsum, so batches built from permutations
    of the same outcomes carry bit-identical sufficient statistics.
    """

    samples: np.ndarray
    count: int
    sum_sq: float

    def __post_init__(self) -> None:
        arr = np.asarray(self.samples, dtype=float)
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)
        if arr.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must all be finite")
        if self.count != arr.size:
            raise ValueError(f"count {self.count} != number of samples {arr.size}")
        check = math.fsum(float(v) * float(v) for v in arr)
        if abs(self.sum_sq - check) > 1e-10 * max(1.0, abs(check)):
            raise ValueError(f"sum_sq {self.sum_sq!r} inconsistent with samples ({check!r})")

    @classmethod
    def from_samples(cls, samples: Sequence[float] | np.ndarray) -> "HomodyneBatch":
        arr = np.asarray(samples, dtype=float)
        sum_sq = math.fsum(float(v) * float(v) for v in arr)
        return cls(samples=arr, count=int(arr.size), sum_sq=sum_sq)

    def prefix(self, n: int) -> "HomodyneBatch":
        """First n outcomes as a new batch (used for the rough-estimate stage)."""
        if not 0 <= n <= self.count:
            raise ValueError(f"prefix length {n} outside [0, {self.count}]")
        return HomodyneBatch.from_samples(self.samples[:n])


def sample_homodyne(r: float, phi: float, m: int, seed: int) -> HomodyneBatch:
    """Draw m independent homodyne outcomes at (r, phi), deterministic in seed."""
    if m < 0:
        raise ValueError(f"sample count m must be >= 0, got {m!r}")
    scale = math.sqrt(homodyne_variance(r, phi))
    rng = np.random.default_rng(seed)
    return HomodyneBatch.from_samples(rng.normal(0.0, scale, int(m)))


class HeterodynePoint(NamedTuple):
    """One double-homodyne outcome z = z_re + i z_im (components may be arrays)."""

    z_re: float
    z_im: float


def heterodyne_logpdf(z: HeterodynePoint, r: float, phi: float):
    """Log-density of the double-homodyne outcome for the phase-shifted probe.

    log p = -|z|^2 - tanh(r) * Re[z^2 e^{2 i phi}] - log(pi cosh r).  The
    exponent is the negative quadratic form v^T A v with
    A = I + tanh(r) [[cos 2phi, -sin 2phi], [-sin 2phi, -cos 2phi]],
    eigenvalues 1 +- tanh r, so det A = sech^2 r and the density is normalized.
    Any finite phi is accepted (the form is periodic); r must be >= 0.
    """
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"squeezing magnitude r must be finite and >= 0, got {r!r}")
    if not math.isfinite(phi):
        raise ValueError(f"phi must be finite, got {phi!r}")
    z_re, z_im = z
    t = math.tanh(r)
    re_z2_rot = (np.square(z_re) - np.square(z_im)) * math.cos(2.0 * phi) - (
        2.0 * z_re * z_im
    ) * math.sin(2.0 * phi)
    return (
        -(np.square(z_re) + np.square(z_im))
        - t * re_z2_rot
        - math.log(math.pi * math.cosh(r))
    )


__all__ = [
    "HALF_PI",
    "QuadratureSample",
    "HomodyneBatch",
    "HeterodynePoint",
    "homodyne_variance",
    "variance_profile",
    "homodyne_logpdf",
    "sample_homodyne",
    "heterodyne_logpdf",
]
