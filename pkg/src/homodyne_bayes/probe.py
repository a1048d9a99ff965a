"""Single-mode squeezed-vacuum probe states and their phase-space second moments.

Conventions used throughout the package: the quadrature x_psi carries vacuum
variance 1/4, the probe's squeezing-axis angle ``varphi`` defaults to the
canonical working frame varphi = pi/2 with the measured quadrature at psi = 0,
and the unknown phase shift lives on [0, pi/2].
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HALF_PI = math.pi / 2
VACUUM_VARIANCE = 0.25
CANONICAL_VARPHI = HALF_PI

# floating-point slack for the det >= 1/16 uncertainty check
_DET_TOL = 1e-12


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def require_phase_range(phi: float, name: str = "phi") -> float:
    """Validate a phase angle against the prior support [0, pi/2]."""
    phi = _require_finite(name, phi)
    if not 0.0 <= phi <= HALF_PI:
        raise ValueError(f"{name} must lie in [0, pi/2], got {phi!r}")
    return phi


@dataclass(frozen=True)
class Probe:
    """Displaced squeezed vacuum: squeezing magnitude r, squeezing-axis angle
    varphi, and displacement alpha (split into real/imaginary parts).
    """

    r: float
    varphi: float = CANONICAL_VARPHI
    alpha_re: float = 0.0
    alpha_im: float = 0.0

    def __post_init__(self) -> None:
        r = _require_finite("r", self.r)
        if r < 0.0:
            raise ValueError(f"squeezing magnitude r must be >= 0, got {r!r}")
        _require_finite("varphi", self.varphi)
        _require_finite("alpha_re", self.alpha_re)
        _require_finite("alpha_im", self.alpha_im)

    def energy(self) -> float:
        """Mean photon number sinh^2(r) + |alpha|^2."""
        return math.sinh(self.r) ** 2 + self.alpha_re**2 + self.alpha_im**2

    def is_canonical(self) -> bool:
        return (
            self.varphi == CANONICAL_VARPHI
            and self.alpha_re == 0.0
            and self.alpha_im == 0.0
        )


@dataclass(frozen=True)
class CovarianceMatrix2:
    """Symmetric 2x2 quadrature covariance (vacuum = 1/4 on the diagonal)."""

    s11: float
    s12: float
    s22: float

    def __post_init__(self) -> None:
        for name in ("s11", "s12", "s22"):
            _require_finite(name, getattr(self, name))
        if self.s11 <= 0.0 or self.s22 <= 0.0:
            raise ValueError("diagonal covariance entries must be positive")
        if self.det() < VACUUM_VARIANCE**2 - _DET_TOL:
            raise ValueError(
                f"covariance violates the uncertainty bound: det = {self.det()!r} < 1/16"
            )

    def det(self) -> float:
        return self.s11 * self.s22 - self.s12**2

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.s11, self.s12], [self.s12, self.s22]])


def _require_canonical(probe: Probe) -> None:
    if not probe.is_canonical():
        raise ValueError(
            "probe must be in the canonical frame (varphi = pi/2, alpha = 0); "
            "detuned frames are handled by the adaptive phase translation"
        )


def probe_covariance(probe: Probe) -> CovarianceMatrix2:
    """Covariance of the canonical squeezed-vacuum probe: diag(e^-2r, e^2r)/4."""
    _require_canonical(probe)
    return CovarianceMatrix2(
        s11=VACUUM_VARIANCE * math.exp(-2.0 * probe.r),
        s12=0.0,
        s22=VACUUM_VARIANCE * math.exp(2.0 * probe.r),
    )


def phase_shifted_covariance(probe: Probe, phi: float) -> CovarianceMatrix2:
    """Second moments of the probe after an unknown phase shift phi.

    Entries (in the measured frame, psi = 0 marginal = s22):

        s11 = (e^{2r} cos^2 phi + e^{-2r} sin^2 phi) / 4
        s22 = (e^{-2r} cos^2 phi + e^{2r} sin^2 phi) / 4
        s12 = sinh(2r) sin(2 phi) / 4

    Equal to a rotation conjugation R_phi C_0 R_phi^T of the phi = 0 matrix.
    Note the axis convention at phi = 0 is the transpose-swap of
    ``probe_covariance`` (the measured marginal starts on the squeezed axis).
    """
    _require_canonical(probe)
    phi = require_phase_range(phi)
    ep, em = math.exp(2.0 * probe.r), math.exp(-2.0 * probe.r)
    c2, s2 = math.cos(phi) ** 2, math.sin(phi) ** 2
    return CovarianceMatrix2(
        s11=VACUUM_VARIANCE * (ep * c2 + em * s2),
        s12=VACUUM_VARIANCE * math.sinh(2.0 * probe.r) * math.sin(2.0 * phi),
        s22=VACUUM_VARIANCE * (em * c2 + ep * s2),
    )


def energy_fluctuation(probe: Probe) -> float:
    """Variance of the phase-shift generator (photon number) for the probe.

    Full displaced-squeezed form; reduces to sinh^2(2r)/2 at alpha = 0, which
    is the value that fixes the quantum information bound (qfi = 4 * this).
    General alpha/varphi are accepted here, unlike the covariance helpers.
    """
    r, varphi = probe.r, probe.varphi
    a_re, a_im = probe.alpha_re, probe.alpha_im
    along = a_re * math.cos(varphi) + a_im * math.sin(varphi)
    across = a_re * math.sin(varphi) - a_im * math.cos(varphi)
    return (
        0.5 * math.sinh(2.0 * r) ** 2
        + math.exp(2.0 * r) * along**2
        - math.exp(-2.0 * r) * across**2
    )
