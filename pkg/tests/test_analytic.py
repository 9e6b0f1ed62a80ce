"""Unit tests for closed forms, sweeps, the ansatz fit and contour grids."""

import math
import warnings

import numpy as np
import pytest

from squeezesim import (
    DegenerateDataError,
    FitConditionWarning,
    SimulationConfig,
    ValidityWarning,
    adiabaticity_measure,
    contour_grid,
    fit_ansatz,
    fitted_sp,
    is_adiabatic,
    jump_sp_closed_form,
    reference_sweep_data,
    sweep_final_sp,
)

LN3 = math.log(3.0)


class TestJumpClosedForm:
    def test_frozen_value(self):
        assert jump_sp_closed_form(1.0, 3.0, 0.2) == pytest.approx(
            0.695430918890615646, abs=1e-15
        )

    def test_zeros_and_maxima(self):
        # vanishes at multiples of the half period, peaks at 2|rho_f|
        assert jump_sp_closed_form(1.0, 3.0, 0.0) == 0.0
        assert jump_sp_closed_form(1.0, 3.0, math.pi / 3.0) == pytest.approx(0.0, abs=1e-15)
        assert jump_sp_closed_form(1.0, 3.0, math.pi / 6.0) == pytest.approx(LN3, abs=1e-15)

    def test_direction_symmetry(self):
        # ratio k and 1/k give the same magnitude once time is rescaled
        t = 0.37
        up = jump_sp_closed_form(1.0, 3.0, t)
        down = jump_sp_closed_form(3.0, 9.0, t)  # same ratio, scaled frequencies
        assert up == pytest.approx(jump_sp_closed_form(1.0, 3.0, t))
        assert down == pytest.approx(jump_sp_closed_form(1.0, 3.0, 3 * t), abs=1e-12)

    def test_array_input(self):
        ts = np.linspace(0.0, 1.0, 7)
        out = jump_sp_closed_form(1.0, 3.0, ts)
        assert out.shape == ts.shape
        assert np.all(out >= 0.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            jump_sp_closed_form(0.0, 3.0, 0.1)


class TestFittedSp:
    def test_frozen_value(self):
        assert fitted_sp(1.0, 3.0, 0.5) == pytest.approx(
            0.223268064872684356, abs=1e-15
        )

    def test_sudden_limit_reaches_rho_f(self):
        assert fitted_sp(1.0, 3.0, 0.0) == pytest.approx(0.5 * LN3, abs=1e-15)
        assert fitted_sp(1.0, 0.2, 0.0) == pytest.approx(0.5 * math.log(5.0), abs=1e-15)

    def test_monotone_decay_in_width(self):
        eps = np.linspace(0.0, 3.0, 40)
        vals = fitted_sp(1.0, 3.0, eps)
        assert np.all(np.diff(vals) < 0.0)

    def test_direction_uses_minimum_frequency(self):
        # decreasing ramps decay on the slower final-frequency scale
        up = fitted_sp(1.0, 5.0, 1.0)
        down = fitted_sp(1.0, 0.2, 1.0)
        assert down > up
        assert down == pytest.approx(fitted_sp(1.0, 5.0, 0.2), abs=1e-15)

    def test_validity_warning_beyond_ratio_ten(self):
        with pytest.warns(ValidityWarning):
            fitted_sp(1.0, 12.0, 0.5)
        with pytest.warns(ValidityWarning):
            fitted_sp(1.0, 0.05, 0.5)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            fitted_sp(1.0, 10.0, 0.5)  # boundary included

    def test_validation(self):
        with pytest.raises(ValueError):
            fitted_sp(1.0, 3.0, -0.1)
        with pytest.raises(ValueError):
            fitted_sp(-1.0, 3.0, 0.1)


class TestAdiabaticityMeasure:
    def test_reference_values(self):
        assert adiabaticity_measure(1.0, 3.0, 1.5) == pytest.approx(
            0.215150075117407789, abs=1e-15
        )
        assert adiabaticity_measure(1.0, 3.0, 15.0) == pytest.approx(
            0.0215150075117407789, abs=1e-15
        )

    def test_sudden_limit_is_infinite(self):
        assert adiabaticity_measure(1.0, 3.0, 0.0) == math.inf

    def test_inverse_in_width(self):
        m1 = adiabaticity_measure(1.0, 3.0, 0.5)
        m2 = adiabaticity_measure(1.0, 3.0, 1.0)
        assert m1 == pytest.approx(2.0 * m2, abs=1e-14)

    def test_decreasing_ramp_uses_min_frequency(self):
        up = adiabaticity_measure(1.0, 3.0, 1.0)
        down = adiabaticity_measure(3.0, 1.0, 1.0)
        assert down == pytest.approx(up, abs=1e-14)

    def test_degenerate_transition_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            adiabaticity_measure(2.0, 2.0, 1.0)

    def test_classification_threshold(self):
        assert is_adiabatic(1.0, 3.0, 15.0)
        assert not is_adiabatic(1.0, 3.0, 0.5)
        assert is_adiabatic(1.0, 3.0, 0.5, threshold=1.0)
        with pytest.raises(ValueError):
            is_adiabatic(1.0, 3.0, 0.5, threshold=0.0)


FAST = SimulationConfig(n_slices=2048, record_stride=8, convergence_tol=1e-3)


class TestSweep:
    def test_zero_width_cell_matches_jump(self):
        pts = sweep_final_sp(1.0, 3.0, [0.0], FAST)
        assert pts[0].error is None
        assert pts[0].R_final == pytest.approx(0.5 * LN3, abs=1e-6)

    def test_monotone_in_width(self):
        pts = sweep_final_sp(1.0, 3.0, [0.0, 0.5, 1.0], FAST)
        vals = [p.R_final for p in pts]
        assert vals[0] > vals[1] > vals[2]

    def test_parallel_matches_serial(self):
        serial = sweep_final_sp(1.0, 3.0, [0.0, 0.4], FAST, jobs=None)
        parallel = sweep_final_sp(1.0, 3.0, [0.0, 0.4], FAST, jobs=2)
        assert serial == parallel

    def test_cell_failure_is_reported_not_raised(self):
        # a cap of one slice cannot resolve anything: the ladder never
        # converges but the sweep still returns a row per cell
        bad = SimulationConfig(
            n_slices=4, record_stride=1, convergence_tol=1e-16, n_max=8
        )
        pts = sweep_final_sp(1.0, 3.0, [0.5], bad)
        assert len(pts) == 1
        assert pts[0].error is None or isinstance(pts[0].error, str)

    def test_reference_lattice_shape(self):
        data = reference_sweep_data(source="formula")
        assert len(data) == 80
        ratios = {of / o0 for o0, of, _, _ in data}
        assert 1.5 in ratios and pytest.approx(1 / 1.5) in [pytest.approx(x) for x in ratios]
        with pytest.raises(ValueError):
            reference_sweep_data(source="lookup-table")


class TestFitAnsatz:
    def test_recovers_constants_from_formula_data(self):
        data = reference_sweep_data(source="formula")
        fit = fit_ansatz(data)
        assert fit.c1 == pytest.approx(2.0, abs=1e-6)
        assert fit.c2 == pytest.approx(1.0, abs=1e-6)
        assert fit.residual_rms < 1e-12
        assert fit.n_points == 80

    def test_recovers_other_constants(self):
        data = []
        for omegaf in (2.0, 4.0, 0.5):
            for eps in (0.0, 0.3, 0.7, 1.4):
                data.append((1.0, omegaf, eps, fitted_sp(1.0, omegaf, eps, c1=1.7, c2=0.6)))
        fit = fit_ansatz(data)
        assert fit.c1 == pytest.approx(1.7, abs=1e-8)
        assert fit.c2 == pytest.approx(0.6, abs=1e-8)

    def test_sign_convention_positive_c1(self):
        data = reference_sweep_data(source="formula")
        fit = fit_ansatz(data)
        assert fit.c1 > 0.0

    def test_all_zero_width_rejected(self):
        data = [(1.0, 3.0, 0.0, 0.5 * LN3), (1.0, 2.0, 0.0, 0.5 * math.log(2.0))]
        with pytest.raises(DegenerateDataError, match="epsilon = 0"):
            fit_ansatz(data)

    def test_too_few_points_rejected(self):
        with pytest.raises(DegenerateDataError):
            fit_ansatz([(1.0, 3.0, 0.5, 0.2)])

    def test_single_ratio_warns(self):
        data = [(1.0, 3.0, e, fitted_sp(1.0, 3.0, e)) for e in (0.0, 0.2, 0.5, 1.0)]
        with pytest.warns(FitConditionWarning, match="single frequency ratio"):
            fit_ansatz(data)

    def test_noise_tolerance(self):
        rng = np.random.default_rng(7)
        data = []
        for omegaf in (1.5, 2.0, 3.0, 5.0):
            for eps in (0.1, 0.3, 0.6, 1.0, 1.5):
                val = fitted_sp(1.0, omegaf, eps) * (1.0 + 1e-4 * rng.standard_normal())
                data.append((1.0, omegaf, eps, val))
        fit = fit_ansatz(data)
        assert fit.c1 == pytest.approx(2.0, abs=5e-3)
        assert fit.c2 == pytest.approx(1.0, abs=5e-3)


class TestContourGrid:
    def test_formula_grid_values(self):
        g = contour_grid((1.5, 5.0), (0.0, 2.0), 8, 5, source="formula")
        assert g.R.shape == (8, 5)
        # spot check one cell against the scalar evaluation
        assert g.R[3, 2] == pytest.approx(
            fitted_sp(1.0, float(g.ratios[3]), float(g.omega0_eps[2])), abs=1e-15
        )
        # width axis decays for every ratio
        assert np.all(np.diff(g.R, axis=1) < 0.0)

    def test_below_unity_mode(self):
        g = contour_grid((0.2, 0.9), (0.1, 1.0), 4, 4, mode="below-unity")
        assert np.all(g.R > 0.0)

    def test_mode_range_consistency_enforced(self):
        with pytest.raises(ValueError):
            contour_grid((0.5, 2.0), (0.0, 1.0), 4, 4, mode="above-unity")
        with pytest.raises(ValueError):
            contour_grid((0.5, 2.0), (0.0, 1.0), 4, 4, mode="below-unity")
        with pytest.raises(ValueError):
            contour_grid((1.5, 5.0), (1.0, 0.0), 4, 4)
        with pytest.raises(ValueError):
            contour_grid((1.5, 5.0), (0.0, 1.0), 1, 4)
        with pytest.raises(ValueError):
            contour_grid((1.5, 5.0), (0.0, 1.0), 4, 4, mode="diagonal")
        with pytest.raises(ValueError):
            contour_grid((1.5, 5.0), (0.0, 1.0), 4, 4, source="guess")

    def test_validity_warning_outside_ratio_range(self):
        with pytest.warns(ValidityWarning):
            contour_grid((2.0, 12.0), (0.0, 1.0), 3, 3, source="formula")

    def test_simulation_source_matches_direct_run(self):
        g = contour_grid(
            (2.9, 3.1), (0.45, 0.55), 3, 3, source="simulation", cfg=FAST
        )
        pts = sweep_final_sp(1.0, 3.0, [0.5], FAST)
        assert g.R[1, 1] == pytest.approx(pts[0].R_final, abs=1e-9)
