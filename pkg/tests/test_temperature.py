import math

import numpy as np
import pytest

from bpdngibbs import (
    TemperatureConstraintError,
    TemperatureTarget,
    bias_mse_ratio,
    boundary_temperature,
    consistent_temperature,
    exterior_temperature,
    interior_mean,
    interior_second_moment,
    interior_temperature_from_bias,
    interior_temperature_from_mse,
    temperature_curves,
)


class TestInteriorTemperatures:
    def test_bias_value(self):
        assert interior_temperature_from_bias(0.01, 0.5) == pytest.approx(0.0075, rel=1e-12)

    def test_bias_shrinks_near_one(self):
        assert interior_temperature_from_bias(0.001, 0.999) < 1e-5

    def test_bias_rejects_edges(self):
        with pytest.raises(ValueError):
            interior_temperature_from_bias(0.0, 0.5)
        with pytest.raises(ValueError):
            interior_temperature_from_bias(0.01, 0.0)
        with pytest.raises(ValueError):
            interior_temperature_from_bias(0.01, 1.0)

    def test_mse_value(self):
        assert interior_temperature_from_mse(3.5e-4, 0.5) == pytest.approx(0.0075, rel=1e-12)

    def test_mse_at_symmetric_point(self):
        assert interior_temperature_from_mse(0.01, 0.0) == pytest.approx(math.sqrt(0.005), rel=1e-12)

    def test_mse_square_root_scaling(self):
        assert interior_temperature_from_mse(4 * 0.01, 0.3) == pytest.approx(
            2 * interior_temperature_from_mse(0.01, 0.3), rel=1e-12
        )


class TestConstraintRatio:
    def test_value_at_half(self):
        assert bias_mse_ratio(0.5) == pytest.approx(2.0 / 7.0, rel=1e-12)

    def test_vanishes_at_zero(self):
        assert bias_mse_ratio(1e-9) < 1e-8

    def test_monotone_increasing(self):
        grid = np.linspace(0.01, 0.99, 99)
        vals = np.array([bias_mse_ratio(u) for u in grid])
        assert np.all(np.diff(vals) > 0.0)

    def test_algebraic_identity(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            u = float(rng.uniform(0.01, 0.99))
            b = float(rng.uniform(1e-4, 0.5))
            mse = b * b / bias_mse_ratio(u)
            tb = interior_temperature_from_bias(b, u)
            tm = interior_temperature_from_mse(mse, u)
            assert abs(tb - tm) <= 1e-12 * tb


class TestBoundaryTemperature:
    def test_from_bias(self):
        assert boundary_temperature(1.0, bias_b=0.1) == pytest.approx(math.pi * 0.01 / 2.0, rel=1e-12)

    def test_pair_consistent_when_constraint_holds(self):
        b = 0.1
        mse = math.pi * b * b / 2.0
        assert boundary_temperature(1.0, bias_b=b, mse=mse) == pytest.approx(mse / 1.0, rel=1e-9)

    def test_inconsistent_pair_rejected(self):
        with pytest.raises(TemperatureConstraintError):
            boundary_temperature(1.0, bias_b=0.1, mse=0.1)

    def test_needs_a_target(self):
        with pytest.raises(ValueError):
            boundary_temperature(1.0)


class TestExteriorTemperature:
    def test_values(self):
        assert exterior_temperature(0.05, 1.0) == pytest.approx(0.05)
        assert exterior_temperature(0.05, 2.0) == pytest.approx(0.025)

    def test_scaling_in_t(self):
        assert exterior_temperature(0.05, 1e6) < 1e-7


class TestConsistentTemperature:
    def test_reference_interior_pair(self):
        target = TemperatureTarget(mse=3.5e-4, bias_b=0.01, regime="interior", u=0.5)
        assert consistent_temperature(target) == pytest.approx(0.0075, rel=1e-9)

    def test_boundary_pair(self):
        target = TemperatureTarget(
            mse=math.pi * 0.01 / 2.0, bias_b=0.1, regime="boundary", t=1.0
        )
        assert consistent_temperature(target) == pytest.approx(0.015708, abs=1e-6)

    def test_exterior(self):
        target = TemperatureTarget(mse=0.01, regime="exterior", t=1.0)
        assert consistent_temperature(target) == pytest.approx(0.01)

    def test_violation_reports_both_candidates(self):
        target = TemperatureTarget(mse=0.01, bias_b=0.01, regime="interior", u=0.5)
        with pytest.raises(TemperatureConstraintError) as err:
            consistent_temperature(target)
        assert err.value.bias_temperature == pytest.approx(0.0075, rel=1e-12)
        assert err.value.mse_temperature == pytest.approx(math.sqrt(0.01 / (56.0 / 9.0)), rel=1e-12)

    def test_loose_tolerance_allows_rounded_inputs(self):
        target = TemperatureTarget(mse=3.6e-4, bias_b=0.01, regime="interior", u=0.5)
        with pytest.raises(TemperatureConstraintError):
            consistent_temperature(target)
        assert consistent_temperature(target, rel_tol=0.05) > 0.0

    def test_mse_only_needs_no_check(self):
        target = TemperatureTarget(mse=3.5e-4, regime="interior", u=0.5)
        assert consistent_temperature(target) == pytest.approx(0.0075, rel=1e-12)

    def test_exterior_rejects_bias(self):
        target = TemperatureTarget(mse=0.01, bias_b=0.1, regime="exterior", t=1.0)
        with pytest.raises(ValueError):
            consistent_temperature(target)

    def test_target_validation(self):
        with pytest.raises(ValueError):
            TemperatureTarget(mse=0.0, regime="interior", u=0.5)
        with pytest.raises(ValueError):
            TemperatureTarget(mse=0.1, regime="interior", u=1.0)
        with pytest.raises(ValueError):
            TemperatureTarget(mse=0.1, regime="boundary")
        with pytest.raises(ValueError):
            TemperatureTarget(mse=0.1, regime="nowhere", t=1.0)


class TestCurves:
    def test_shapes_and_finiteness(self):
        u, t_bias, t_mse, ratio = temperature_curves(0.001, 0.01)
        assert u.shape == t_bias.shape == t_mse.shape == ratio.shape == (512,)
        for arr in (t_bias, t_mse, ratio):
            assert np.isfinite(arr).all()

    def test_bias_curve_decreasing(self):
        _, t_bias, _, _ = temperature_curves(0.001, 0.01)
        assert np.all(np.diff(t_bias) < 0.0)

    def test_matches_pointwise_formulas(self):
        u, t_bias, t_mse, ratio = temperature_curves(0.01, 0.02, n_points=16)
        k = 7
        assert t_bias[k] == pytest.approx(0.01 / interior_mean(u[k]), rel=1e-12)
        assert t_mse[k] == pytest.approx(math.sqrt(0.02 / interior_second_moment(u[k])), rel=1e-12)
        assert ratio[k] == pytest.approx(bias_mse_ratio(u[k]), rel=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            temperature_curves(0.0, 0.01)
        with pytest.raises(ValueError):
            temperature_curves(0.01, 0.01, n_points=1)
