import math

import numpy as np
import pytest
from scipy import integrate

from bpdngibbs import (
    LimitLaw1D,
    boundary_law,
    exterior_law,
    interior_cdf,
    interior_density,
    interior_mean,
    interior_second_moment,
    ks_statistic,
    sample_interior,
)


class TestInteriorDensity:
    def test_symmetric_case_at_zero(self):
        assert interior_density(0.0, 0.0) == pytest.approx(0.5)

    def test_tilted_value(self):
        assert interior_density(0.5, 1.0) == pytest.approx(0.375 * math.exp(-0.5), rel=1e-12)

    def test_normalizes(self):
        for u in (0.0, 0.4, 0.9):
            hi = 50.0 / (1.0 - u)
            val, _ = integrate.quad(lambda x: interior_density(u, x), -hi, hi, points=[0.0], limit=200)
            assert val == pytest.approx(1.0, abs=1e-6)

    def test_domain_checked(self):
        with pytest.raises(ValueError):
            interior_density(1.0, 0.0)
        with pytest.raises(ValueError):
            interior_density(-0.1, 0.0)


class TestInteriorCdf:
    def test_median_at_zero_when_symmetric(self):
        assert interior_cdf(0.0, 0.0) == pytest.approx(0.5)

    def test_limits(self):
        assert interior_cdf(0.3, 100.0) == pytest.approx(1.0, abs=1e-12)
        assert interior_cdf(0.3, -100.0) == pytest.approx(0.0, abs=1e-12)

    def test_negative_branch_mass(self):
        assert interior_cdf(0.5, 0.0) == pytest.approx(0.25)

    def test_matches_integrated_density(self):
        for u in (0.0, 0.5, 0.9):
            lo = -40.0 / (1.0 - u)
            for x in np.linspace(-4.0, 4.0, 33):
                num, _ = integrate.quad(
                    lambda s: interior_density(u, s), lo, x, points=[0.0] if lo < 0.0 < x else None,
                    limit=200,
                )
                assert abs(num - interior_cdf(u, x)) < 1e-8

    def test_derivative_matches_density(self):
        h = 1e-6
        for u in (0.1, 0.6):
            for x in np.linspace(-3.0, 3.0, 25):
                if abs(x) < 2 * h:
                    continue
                slope = (interior_cdf(u, x + h) - interior_cdf(u, x - h)) / (2 * h)
                assert abs(slope - interior_density(u, x)) < 1e-5


class TestInteriorSampler:
    def test_symmetric_sign_frequencies(self):
        rng = np.random.default_rng(0)
        x = sample_interior(0.0, rng, 100_000)
        assert abs((x > 0).mean() - 0.5) < 3.0 * 0.5 / math.sqrt(100_000)

    def test_tilted_sign_frequencies(self):
        rng = np.random.default_rng(1)
        x = sample_interior(0.9, rng, 100_000)
        p = 0.95
        assert abs((x > 0).mean() - p) < 3.0 * math.sqrt(p * (1 - p) / 100_000)

    def test_mean_matches_limit(self):
        rng = np.random.default_rng(2)
        x = sample_interior(0.5, rng, 100_000)
        se = x.std() / math.sqrt(x.size)
        assert abs(x.mean() - 4.0 / 3.0) < 3.0 * se


class TestMoments:
    def test_mean_value(self):
        assert interior_mean(0.5) == pytest.approx(4.0 / 3.0, rel=1e-14)

    def test_mean_vanishes_at_zero(self):
        assert interior_mean(0.0) == 0.0

    def test_second_moment_values(self):
        assert interior_second_moment(0.0) == pytest.approx(2.0)
        assert interior_second_moment(0.5) == pytest.approx(56.0 / 9.0, rel=1e-14)

    def test_quadrature_cross_check(self):
        hi = 80.0
        m1, _ = integrate.quad(lambda x: x * interior_density(0.5, x), -hi, hi, points=[0.0], limit=200)
        m2, _ = integrate.quad(lambda x: x * x * interior_density(0.5, x), -hi, hi, points=[0.0], limit=200)
        assert m1 == pytest.approx(interior_mean(0.5), abs=1e-6)
        assert m2 == pytest.approx(interior_second_moment(0.5), abs=1e-6)

    def test_domain_checked(self):
        for fn in (interior_mean, interior_second_moment):
            with pytest.raises(ValueError):
                fn(1.0)
            with pytest.raises(ValueError):
                fn(-0.2)

    def test_vectorized(self):
        u = np.array([0.0, 0.5])
        assert np.allclose(interior_mean(u), [0.0, 4.0 / 3.0])
        assert np.allclose(interior_second_moment(u), [2.0, 56.0 / 9.0])


class TestBoundaryAndExteriorLaws:
    def test_negative_branch_mean(self):
        rng = np.random.default_rng(3)
        x = boundary_law(1.0, "negative", rng, 100_000)
        assert np.all(x <= 0.0)
        assert abs(x.mean() + 0.5) < 3.0 * 0.5 / math.sqrt(100_000)

    def test_positive_branch_moments(self):
        rng = np.random.default_rng(4)
        x = boundary_law(1.0, "positive", rng, 100_000)
        target = math.sqrt(2.0 / math.pi)
        assert abs(x.mean() - target) < 3.0 * x.std() / math.sqrt(x.size)
        se2 = (x * x).std() / math.sqrt(x.size)
        assert abs((x * x).mean() - 1.0) < 3.0 * se2

    def test_exterior_moments(self):
        rng = np.random.default_rng(5)
        x = exterior_law(2.0, rng, 100_000)
        assert abs(x.mean()) < 3.0 * math.sqrt(2.0 / 100_000)
        v = x * x
        assert abs(v.mean() - 2.0) < 3.0 * v.std() / math.sqrt(x.size)

    def test_exterior_coverage(self):
        rng = np.random.default_rng(6)
        x = exterior_law(1.0, rng, 100_000)
        p = 0.95
        assert abs((np.abs(x) < 1.96).mean() - p) < 3.0 * math.sqrt(p * (1 - p) / 100_000)

    def test_branch_validation(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ValueError):
            boundary_law(1.0, "sideways", rng)
        with pytest.raises(ValueError):
            boundary_law(0.0, "positive", rng)


class TestKsStatistic:
    def test_own_samples_are_close(self):
        rng = np.random.default_rng(7)
        n = 10_000
        x = sample_interior(0.4, rng, n)
        assert ks_statistic(x, lambda s: interior_cdf(0.4, s)) < 1.95 / math.sqrt(n)

    def test_degenerate_samples(self):
        law = LimitLaw1D("exterior", t=1.0)
        assert ks_statistic(np.zeros(100), law.cdf) >= 0.5

    def test_exact_quantiles(self):
        n = 200
        u = 0.3
        # invert the closed-form CDF branch by branch
        probs = np.arange(1, n + 1) / (n + 1)
        xs = np.where(
            probs < (1 - u) / 2,
            np.log(2 * probs / (1 - u)) / (1 + u),
            -np.log(2 * (1 - probs) / (1 + u)) / (1 - u),
        )
        assert ks_statistic(xs, lambda s: interior_cdf(u, s)) <= 1.0 / (n + 1) + 1e-9

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ks_statistic([], lambda s: s)


class TestLimitLaw1D:
    def test_validation(self):
        with pytest.raises(ValueError):
            LimitLaw1D("interior")
        with pytest.raises(ValueError):
            LimitLaw1D("interior", u=1.0)
        with pytest.raises(ValueError):
            LimitLaw1D("boundary")
        with pytest.raises(ValueError):
            LimitLaw1D("elsewhere", t=1.0)

    def test_interior_dispatch(self):
        law = LimitLaw1D("interior", u=0.5)
        assert law.density(1.0) == interior_density(0.5, 1.0)
        assert law.cdf(0.0) == interior_cdf(0.5, 0.0)
        assert law.mean() == interior_mean(0.5)
        assert law.second_moment() == interior_second_moment(0.5)

    def test_boundary_moments_match_samples(self):
        law = LimitLaw1D("boundary", t=2.0)
        rng = np.random.default_rng(8)
        x = law.sample(rng, 100_000)
        assert abs(x.mean() - law.mean()) < 3.0 * x.std() / math.sqrt(x.size)
        v = x * x
        assert abs(v.mean() - law.second_moment()) < 3.0 * v.std() / math.sqrt(x.size)

    def test_cdfs_monotone_normalized(self):
        for law in (
            LimitLaw1D("interior", u=0.2),
            LimitLaw1D("boundary", t=1.0),
            LimitLaw1D("exterior", t=1.0),
        ):
            grid = np.linspace(-6.0, 6.0, 201)
            vals = law.cdf(grid)
            assert np.all(np.diff(vals) >= -1e-12)
            assert vals[0] >= 0.0 and vals[-1] <= 1.0

    def test_boundary_cdf_zero_below(self):
        law = LimitLaw1D("boundary", t=1.0)
        assert law.cdf(-0.5) == 0.0
        assert law.density(-0.5) == 0.0
