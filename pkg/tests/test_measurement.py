"""Homodyne and double-homodyne statistics, batches, and samplers."""
import math

import numpy as np
import pytest

from homodyne_bayes.measurement import (
    HALF_PI,
    HeterodynePoint,
    HomodyneBatch,
    heterodyne_logpdf,
    homodyne_logpdf,
    homodyne_variance,
    sample_homodyne,
    variance_profile,
)


class TestHomodyneVariance:
    def test_frozen_value(self):
        assert homodyne_variance(0.6, 0.3) == pytest.approx(
            0.1412108378432182, rel=1e-13
        )

    def test_vacuum_flat_quarter(self):
        for phi in (0.0, 0.4, 1.1, HALF_PI):
            assert homodyne_variance(0.0, phi) == pytest.approx(0.25, rel=1e-15)

    def test_endpoints(self):
        r = 0.8
        assert homodyne_variance(r, 0.0) == pytest.approx(math.exp(-1.6) / 4, rel=1e-13)
        assert homodyne_variance(r, HALF_PI) == pytest.approx(math.exp(1.6) / 4, rel=1e-13)

    def test_monotone_on_support(self):
        phis = np.linspace(0.0, HALF_PI, 50)
        vals = [homodyne_variance(0.5, p) for p in phis]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_reflection_swaps_squeezing_sign(self):
        # variance at pi/2 - phi equals the antisqueezed expression at phi
        r, phi = 0.7, 0.2
        direct = homodyne_variance(r, HALF_PI - phi)
        swapped = 0.25 * (
            math.exp(2 * r) * math.cos(phi) ** 2 + math.exp(-2 * r) * math.sin(phi) ** 2
        )
        assert direct == pytest.approx(swapped, rel=1e-13)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            homodyne_variance(0.5, -0.01)
        with pytest.raises(ValueError):
            homodyne_variance(-0.5, 0.3)

    def test_profile_matches_scalar(self):
        phis = np.array([0.0, 0.3, 1.0])
        prof = variance_profile(0.6, phis)
        for got, phi in zip(prof, phis):
            assert got == pytest.approx(homodyne_variance(0.6, phi), rel=1e-14)


class TestHomodyneLogpdf:
    def test_matches_gaussian_formula(self):
        var = homodyne_variance(0.6, 0.3)
        x = 0.17
        expected = -0.5 * math.log(2 * math.pi * var) - x * x / (2 * var)
        assert homodyne_logpdf(x, 0.6, 0.3) == pytest.approx(expected, rel=1e-14)

    def test_normalizes_to_one(self):
        # trapezoid over a wide box; the density is a narrow Gaussian
        var = homodyne_variance(0.4, 0.25)
        x = np.linspace(-12 * math.sqrt(var), 12 * math.sqrt(var), 20001)
        total = np.trapezoid(np.exp(homodyne_logpdf(x, 0.4, 0.25)), x)
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_array_shape_preserved(self):
        x = np.zeros((3, 2))
        out = homodyne_logpdf(x, 0.3, 0.3)
        assert out.shape == (3, 2)


class TestHomodyneBatch:
    def test_from_samples_sufficient_statistic(self):
        batch = HomodyneBatch.from_samples([0.1, -0.2, 0.3])
        assert batch.count == 3
        assert batch.sum_sq == pytest.approx(0.01 + 0.04 + 0.09, rel=1e-14)

    def test_permutation_gives_bit_identical_sum_sq(self):
        rng = np.random.default_rng(7)
        vals = rng.normal(0, 0.4, 500)
        a = HomodyneBatch.from_samples(vals)
        b = HomodyneBatch.from_samples(vals[::-1])
        c = HomodyneBatch.from_samples(rng.permutation(vals))
        assert a.sum_sq == b.sum_sq == c.sum_sq

    def test_samples_read_only(self):
        batch = HomodyneBatch.from_samples([0.1, 0.2])
        with pytest.raises(ValueError):
            batch.samples[0] = 9.9

    def test_inconsistent_stats_rejected(self):
        with pytest.raises(ValueError):
            HomodyneBatch(samples=np.array([1.0, 2.0]), count=2, sum_sq=1.0)
        with pytest.raises(ValueError):
            HomodyneBatch(samples=np.array([1.0, 2.0]), count=3, sum_sq=5.0)

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            HomodyneBatch.from_samples([0.1, math.inf])

    def test_prefix(self):
        batch = HomodyneBatch.from_samples([0.1, -0.2, 0.3, 0.4])
        head = batch.prefix(2)
        assert head.count == 2
        assert list(head.samples) == [0.1, -0.2]
        with pytest.raises(ValueError):
            batch.prefix(5)

    def test_empty_batch(self):
        batch = HomodyneBatch.from_samples([])
        assert batch.count == 0 and batch.sum_sq == 0.0


class TestSampleHomodyne:
    def test_deterministic_in_seed(self):
        a = sample_homodyne(0.6, 0.3, 100, seed=42)
        b = sample_homodyne(0.6, 0.3, 100, seed=42)
        assert np.array_equal(a.samples, b.samples)
        assert a.sum_sq == b.sum_sq

    def test_different_seeds_differ(self):
        a = sample_homodyne(0.6, 0.3, 100, seed=1)
        b = sample_homodyne(0.6, 0.3, 100, seed=2)
        assert not np.array_equal(a.samples, b.samples)

    def test_moments_match_variance(self):
        var = homodyne_variance(0.5, 0.4)
        batch = sample_homodyne(0.5, 0.4, 200_000, seed=11)
        assert batch.sum_sq / batch.count == pytest.approx(var, rel=0.02)
        assert float(np.mean(batch.samples)) == pytest.approx(0.0, abs=0.01)

    def test_zero_count_allowed(self):
        assert sample_homodyne(0.5, 0.4, 0, seed=3).count == 0

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            sample_homodyne(0.5, 0.4, -1, seed=3)


class TestHeterodyneLogpdf:
    def test_vacuum_reduces_to_coherent_overlap(self):
        # r = 0: density pi^-1 exp(-|z|^2)
        z = HeterodynePoint(0.4, -0.7)
        expected = -(0.4**2 + 0.7**2) - math.log(math.pi)
        assert heterodyne_logpdf(z, 0.0, 0.9) == pytest.approx(expected, rel=1e-14)

    def test_normalizes_to_one(self):
        r, phi = 0.6, 0.35
        widest = math.sqrt(1.0 / (2.0 * (1.0 - math.tanh(r))))
        grid = np.linspace(-10 * widest, 10 * widest, 901)
        z_re, z_im = np.meshgrid(grid, grid)
        dens = np.exp(heterodyne_logpdf((z_re, z_im), r, phi))
        total = np.trapezoid(np.trapezoid(dens, grid, axis=1), grid)
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_quadratic_form_oracle(self):
        # independent route: -v^T A v - log(pi cosh r) with the explicit matrix
        r, phi = 0.8, 0.3
        t = math.tanh(r)
        a = np.array(
            [
                [1 + t * math.cos(2 * phi), -t * math.sin(2 * phi)],
                [-t * math.sin(2 * phi), 1 - t * math.cos(2 * phi)],
            ]
        )
        v = np.array([0.5, -0.3])
        expected = -v @ a @ v - math.log(math.pi * math.cosh(r))
        got = heterodyne_logpdf(HeterodynePoint(0.5, -0.3), r, phi)
        assert got == pytest.approx(expected, rel=1e-13)
        # det A = sech^2 r guarantees the normalizer
        assert np.linalg.det(a) == pytest.approx(1 / math.cosh(r) ** 2, rel=1e-13)

    def test_phase_periodic(self):
        z = HeterodynePoint(0.2, 0.1)
        assert heterodyne_logpdf(z, 0.5, 0.3) == pytest.approx(
            heterodyne_logpdf(z, 0.5, 0.3 + math.pi), rel=1e-12
        )

    def test_negative_r_rejected(self):
        with pytest.raises(ValueError):
            heterodyne_logpdf(HeterodynePoint(0.0, 0.0), -0.2, 0.3)
