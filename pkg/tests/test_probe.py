"""Probe states and phase-shifted covariance matrices.

The rotation oracle rebuilds the shifted covariance as R(phi) S R(phi)^T
with plain numpy matrices, independent of the closed-form entries.
"""
import math

import numpy as np
import pytest

from homodyne_bayes.probe import (
    HALF_PI,
    VACUUM_VARIANCE,
    CovarianceMatrix2,
    Probe,
    energy_fluctuation,
    phase_shifted_covariance,
    probe_covariance,
)


def rotated_covariance_oracle(r: float, phi: float) -> np.ndarray:
    # independent route: conjugate the phi = 0 diagonal (measured marginal on
    # the squeezed axis) by a counterclockwise rotation.
    base = np.diag([math.exp(2.0 * r), math.exp(-2.0 * r)]) / 4.0
    c, s = math.cos(phi), math.sin(phi)
    rot = np.array([[c, -s], [s, c]])
    return rot @ base @ rot.T


class TestProbe:
    def test_energy_is_sinh_squared(self):
        assert Probe(r=0.6).energy() == pytest.approx(math.sinh(0.6) ** 2, rel=1e-12)

    def test_energy_includes_displacement(self):
        p = Probe(r=0.5, alpha_re=1.0, alpha_im=2.0)
        assert p.energy() == pytest.approx(math.sinh(0.5) ** 2 + 5.0, rel=1e-12)

    def test_vacuum_probe_energy_zero(self):
        assert Probe(r=0.0).energy() == 0.0

    def test_negative_squeezing_rejected(self):
        with pytest.raises(ValueError):
            Probe(r=-0.1)

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            Probe(r=math.nan)

    def test_canonical_flag(self):
        assert Probe(r=0.3).is_canonical()
        assert not Probe(r=0.3, alpha_re=0.5).is_canonical()
        assert not Probe(r=0.3, varphi=0.1).is_canonical()


class TestCovarianceMatrix2:
    def test_determinant(self):
        m = CovarianceMatrix2(s11=0.5, s12=0.1, s22=0.3)
        assert m.det() == pytest.approx(0.5 * 0.3 - 0.01, rel=1e-12)

    def test_uncertainty_floor_enforced(self):
        # det >= 1/16 for a physical single-mode state
        with pytest.raises(ValueError):
            CovarianceMatrix2(s11=0.1, s12=0.0, s22=0.1)

    def test_positive_diagonal_required(self):
        with pytest.raises(ValueError):
            CovarianceMatrix2(s11=-0.5, s12=0.0, s22=0.5)

    def test_as_matrix_symmetric(self):
        m = CovarianceMatrix2(s11=0.5, s12=0.1, s22=0.3)
        arr = m.as_matrix()
        assert arr.shape == (2, 2)
        assert arr[0, 1] == arr[1, 0] == 0.1


class TestProbeCovariance:
    def test_vacuum_is_isotropic_quarter(self):
        cov = probe_covariance(Probe(r=0.0))
        assert cov.s11 == cov.s22 == VACUUM_VARIANCE
        assert cov.s12 == 0.0

    def test_squeezed_axes(self):
        cov = probe_covariance(Probe(r=0.7))
        assert cov.s11 == pytest.approx(math.exp(-1.4) / 4.0, rel=1e-12)
        assert cov.s22 == pytest.approx(math.exp(1.4) / 4.0, rel=1e-12)
        assert cov.s12 == 0.0

    def test_pure_state_det(self):
        cov = probe_covariance(Probe(r=1.2))
        assert cov.det() == pytest.approx(1.0 / 16.0, rel=1e-12)

    def test_noncanonical_frame_rejected(self):
        with pytest.raises(ValueError):
            probe_covariance(Probe(r=0.5, varphi=0.3))


class TestPhaseShiftedCovariance:
    @pytest.mark.parametrize("r", [0.0, 0.3, 0.6, 1.5])
    @pytest.mark.parametrize("phi", [0.0, 0.3, math.pi / 4, 1.2, HALF_PI])
    def test_matches_rotation_oracle(self, r, phi):
        cov = phase_shifted_covariance(Probe(r=r), phi)
        oracle = rotated_covariance_oracle(r, phi)
        assert cov.as_matrix() == pytest.approx(oracle, rel=1e-12, abs=1e-15)

    def test_zero_shift_swaps_axes_vs_probe_frame(self):
        # at phi = 0 the measured marginal (s22) sits on the squeezed axis
        p = Probe(r=0.8)
        cov = phase_shifted_covariance(p, 0.0)
        base = probe_covariance(p)
        assert cov.s11 == pytest.approx(base.s22, rel=1e-12)
        assert cov.s22 == pytest.approx(base.s11, rel=1e-12)
        assert cov.s12 == 0.0

    def test_quarter_turn_recovers_probe_frame(self):
        p = Probe(r=0.8)
        cov = phase_shifted_covariance(p, HALF_PI)
        base = probe_covariance(p)
        assert cov.s11 == pytest.approx(base.s11, rel=1e-12)
        assert cov.s22 == pytest.approx(base.s22, rel=1e-12)
        assert abs(cov.s12) < 1e-16

    def test_det_preserved_under_shift(self):
        p = Probe(r=0.9)
        for phi in (0.1, 0.7, 1.3):
            assert phase_shifted_covariance(p, phi).det() == pytest.approx(
                1.0 / 16.0, rel=1e-9
            )

    def test_off_diagonal_closed_form(self):
        # s12 = sinh(2r) sin(2 phi) / 4
        cov = phase_shifted_covariance(Probe(r=0.6), 0.3)
        assert cov.s12 == pytest.approx(math.sinh(1.2) * math.sin(0.6) / 4.0, rel=1e-12)

    def test_out_of_range_phase_rejected(self):
        with pytest.raises(ValueError):
            phase_shifted_covariance(Probe(r=0.5), -0.1)
        with pytest.raises(ValueError):
            phase_shifted_covariance(Probe(r=0.5), HALF_PI + 0.1)


class TestEnergyFluctuation:
    def test_squeezed_vacuum_value(self):
        # frozen: sinh^2(2r)/2 at r = 0.6
        assert energy_fluctuation(Probe(r=0.6)) == pytest.approx(
            1.1392367917413766, rel=1e-12
        )

    def test_vacuum_has_no_fluctuation(self):
        assert energy_fluctuation(Probe(r=0.0)) == 0.0

    def test_axis_angle_irrelevant_without_displacement(self):
        vals = [energy_fluctuation(Probe(r=0.4, varphi=v)) for v in (0.0, 0.3, HALF_PI)]
        assert vals[0] == vals[1] == vals[2]

    def test_displacement_along_antisqueezed_axis(self):
        # at varphi = 0 a real displacement lies along the amplified axis
        p = Probe(r=0.5, varphi=0.0, alpha_re=1.2, alpha_im=0.0)
        expected = 0.5 * math.sinh(1.0) ** 2 + math.exp(1.0) * 1.44
        assert energy_fluctuation(p) == pytest.approx(expected, rel=1e-12)

    def test_displacement_across_squeezed_axis(self):
        p = Probe(r=0.5, varphi=0.0, alpha_re=0.0, alpha_im=0.9)
        expected = 0.5 * math.sinh(1.0) ** 2 - math.exp(-1.0) * 0.81
        assert energy_fluctuation(p) == pytest.approx(expected, rel=1e-12)
