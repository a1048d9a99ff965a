"""Fisher information for both detection schemes, the quantum bound, and the
optimality relations linking squeezing strength to the phase operating point.

Closed forms are cheap enough for dense sweeps; the numeric_* twins rebuild
the same quantities from the likelihoods by fixed-grid Gauss-Legendre
quadrature plus central finite differences, and exist purely as cross-checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measurement import heterodyne_logpdf, homodyne_variance, variance_profile
from .probe import HALF_PI

QUARTER_PI = math.pi / 4

# numeric-oracle defaults: integration box half-width in standard deviations,
# and the central-difference step in radians
_BOX_SIGMAS = 8.0
_FD_STEP = 1e-4


class NonIdentifiableError(ValueError):
    """The likelihood carries no first-order phase information at this point."""


def fisher_homodyne(r: float, phi: float) -> float:
    """Classical Fisher information of single-quadrature homodyne detection.

    sinh^2(2r) sin^2(2 phi) / (8 Sigma^4) with Sigma^2 = homodyne_variance.
    Zero at phi in {0, pi/2} and for r = 0.
    """
    var = homodyne_variance(r, phi)  # validates r and phi
    num = math.sinh(2.0 * r) ** 2 * math.sin(2.0 * phi) ** 2
    return num / (8.0 * var * var)


def fisher_heterodyne(r: float) -> float:
    """Classical Fisher information of double-homodyne detection: 4 sinh^2 r,
    independent of the phase operating point."""
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"squeezing magnitude r must be finite and >= 0, got {r!r}")
    return 4.0 * math.sinh(r) ** 2


def qfi(r: float) -> float:
    """Quantum Fisher information of the squeezed-vacuum probe: 2 sinh^2(2r).

    Phase independent; equals 4x the generator variance at alpha = 0.
    """
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"squeezing magnitude r must be finite and >= 0, got {r!r}")
    return 2.0 * math.sinh(2.0 * r) ** 2


def optimal_variance(r: float) -> float:
    """Single-outcome quantum limit on the phase variance, 1/qfi(r).

    Infinite for the vacuum probe (r = 0), which carries no phase information.
    """
    h = qfi(r)
    return math.inf if h == 0.0 else 1.0 / h


def optimal_phase(r: float) -> float:
    """Operating point where homodyne detection saturates the quantum bound:
    phi_H = arccos(tanh 2r) / 2, in (0, pi/4]."""
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"squeezing magnitude r must be finite and >= 0, got {r!r}")
    return 0.5 * math.acos(math.tanh(2.0 * r))


def optimal_squeezing(phi: float) -> float:
    """Squeezing that makes phi the optimal operating point: -log(tan phi)/2.

    Defined for phi in (0, pi/4]; larger phases would need negative r and are
    handled upstream by the frame reflection phi -> pi/2 - phi.
    """
    if not math.isfinite(phi) or not 0.0 < phi <= QUARTER_PI:
        raise ValueError(
            f"optimal_squeezing needs phi in (0, pi/4], got {phi!r}; "
            "reflect phases above pi/4 before calling"
        )
    return -0.5 * math.log(math.tan(phi))


def variance_ratio_vs_optimal(r: float, phi_star: float, m: int = 1) -> float:
    """Asymptotic posterior variance at squeezing r over the probe's quantum
    limit, both at phase phi_star.

    [1/(m F_H(r, phi*))] / [1/(m qfi(r))] = qfi(r) / F_H(r, phi*): the data
    budget m cancels and is accepted for call-site labeling only.  >= 1
    everywhere, with equality exactly at r = optimal_squeezing(phi_star).
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m!r}")
    fh = fisher_homodyne(r, phi_star)
    if fh <= 0.0:
        raise NonIdentifiableError(
            f"homodyne detection carries no phase information at (r={r}, phi={phi_star})"
        )
    return qfi(r) / fh


@dataclass(frozen=True)
class BoundReport:
    """Information quantities at one (r, phi) operating point."""

    phi: float
    fisher_h: float
    fisher_d: float
    qfi: float
    var_opt: float
    phi_h: float
    r_opt: float

    def __post_init__(self) -> None:
        slack = 1e-12 * max(1.0, self.qfi)
        if not (-slack <= self.fisher_h <= self.qfi + slack):
            raise ValueError("fisher_h must lie in [0, qfi]")
        if not (-slack <= self.fisher_d <= self.qfi + slack):
            raise ValueError("fisher_d must lie in [0, qfi]")
        if self.qfi > 0.0 and abs(self.var_opt * self.qfi - 1.0) > 1e-12:
            raise ValueError("var_opt must equal 1/qfi")


def bound_report(r: float, phi: float | None = None) -> BoundReport:
    """Collect every bound at (r, phi); phi defaults to optimal_phase(r).

    r_opt is the squeezing that would make phi optimal; NaN when phi > pi/4
    (no nonnegative squeezing can move the operating point there).
    """
    if phi is None:
        phi = optimal_phase(r)
    if 0.0 < phi <= QUARTER_PI:
        r_opt = optimal_squeezing(phi)
    else:
        r_opt = math.nan
    return BoundReport(
        phi=phi,
        fisher_h=fisher_homodyne(r, phi),
        fisher_d=fisher_heterodyne(r),
        qfi=qfi(r),
        var_opt=optimal_variance(r),
        phi_h=optimal_phase(r),
        r_opt=r_opt,
    )


def _gauss_legendre(half_width: float, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    return half_width * x, half_width * w


def numeric_fisher_homodyne(
    r: float, phi: float, nodes: int = 401, step: float = _FD_STEP
) -> float:
    """Quadrature + finite-difference rebuild of fisher_homodyne.

    Integrates p (d log p / d phi)^2 over x in [-8 Sigma, 8 Sigma] with
    Gauss-Legendre nodes; the phase derivative is a central difference.
    """
    var0 = homodyne_variance(r, phi)
    x, w = _gauss_legendre(_BOX_SIGMAS * math.sqrt(var0), nodes)
    vm, vp = variance_profile(r, np.array([phi - step, phi + step]))

    def logp(var):
        return -0.5 * math.log(2.0 * math.pi * var) - x * x / (2.0 * var)

    p = np.exp(logp(var0))
    d = (logp(vp) - logp(vm)) / (2.0 * step)
    return float(np.sum(w * p * d * d))


def numeric_fisher_heterodyne(
    r: float, phi: float = 0.3, nodes: int = 200, step: float = _FD_STEP
) -> float:
    """2D quadrature + finite-difference rebuild of fisher_heterodyne.

    The box covers 8 standard deviations of the widest principal axis, whose
    variance is 1/(2 (1 - tanh r)).
    """
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"squeezing magnitude r must be finite and >= 0, got {r!r}")
    widest = math.sqrt(1.0 / (2.0 * (1.0 - math.tanh(r))))
    x, w = _gauss_legendre(_BOX_SIGMAS * widest, nodes)
    z_re, z_im = np.meshgrid(x, x)
    weight = np.outer(w, w)
    p = np.exp(heterodyne_logpdf((z_re, z_im), r, phi))
    d = (
        heterodyne_logpdf((z_re, z_im), r, phi + step)
        - heterodyne_logpdf((z_re, z_im), r, phi - step)
    ) / (2.0 * step)
    return float(np.sum(weight * p * d * d))


__all__ = [
    "HALF_PI",
    "QUARTER_PI",
    "NonIdentifiableError",
    "BoundReport",
    "bound_report",
    "fisher_homodyne",
    "fisher_heterodyne",
    "qfi",
    "optimal_variance",
    "optimal_phase",
    "optimal_squeezing",
    "variance_ratio_vs_optimal",
    "numeric_fisher_homodyne",
    "numeric_fisher_heterodyne",
]
