"""Sweep tooling: staircase, thermal average, landscape, hysteresis walk."""

import math

import pytest

from acring.solver import SolverSettings
from acring.sweeps import (
    HysteresisRecord,
    StaircaseSpec,
    eta_grid,
    hysteresis,
    landscape,
    staircase,
)

TWO_PI = 2.0 * math.pi


class TestEtaGrid:
    def test_snaps_to_decimal_values(self):
        grid = eta_grid(0.0, 3.0, 0.05)
        assert len(grid) == 61
        assert grid[10] == 0.5  # exact half-integer, not 0.5000000000000001
        assert grid[-1] == 3.0

    def test_monotone_without_duplicates(self):
        grid = eta_grid(0.0, 2.0, 0.07)
        assert all(b > a for a, b in zip(grid, grid[1:]))

    def test_endpoint_within_half_step(self):
        assert eta_grid(0.0, 0.26, 0.1) == [0.0, 0.1, 0.2, 0.3]
        assert eta_grid(0.0, 0.24, 0.1) == [0.0, 0.1, 0.2]

    def test_invalid(self):
        with pytest.raises(ValueError):
            eta_grid(0.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            eta_grid(1.0, 0.0, 0.1)


class TestStaircaseAnalytic:
    def test_pure_condensate_traces_integer_steps(self):
        spec = StaircaseSpec(0.0, 3.0, 0.1, u_tilde=2 * TWO_PI, condensate_weight=1.0)
        records = staircase(spec)
        for r in records:
            assert r.thermal_mean == r.winding_T0
            expected = math.floor(r.eta + 0.5) if (r.eta - math.floor(r.eta)) != 0.5 else math.floor(r.eta)
            assert r.winding_T0 == expected
        jumps = [r.eta for prev, r in zip(records, records[1:]) if r.winding_T0 != prev.winding_T0]
        assert jumps == [0.6, 1.6, 2.6]  # first grid point past each half integer

    def test_degenerate_points_flagged(self):
        spec = StaircaseSpec(0.0, 3.0, 0.1, u_tilde=2 * TWO_PI)
        flagged = [r.eta for r in staircase(spec) if r.degenerate]
        assert flagged == [0.5, 1.5, 2.5]

    def test_zero_weight_reproduces_classical_line(self):
        spec = StaircaseSpec(0.0, 2.0, 0.05, u_tilde=TWO_PI, condensate_weight=0.0)
        for r in staircase(spec):
            assert r.thermal_mean == r.eta
            assert r.classical_mean == r.eta

    def test_intermediate_weight_examples(self):
        spec = StaircaseSpec(0.0, 1.0, 0.1, u_tilde=2 * TWO_PI, condensate_weight=0.6)
        records = {r.eta: r for r in staircase(spec)}
        assert records[1.0].thermal_mean == pytest.approx(1.0, abs=1e-15)
        assert records[0.7].thermal_mean == pytest.approx(0.88, abs=1e-15)

    def test_thermal_mean_linear_in_weight(self):
        u = 2 * TWO_PI
        for eta in (0.3, 0.7, 1.2):
            values = {}
            for w in (0.0, 0.25, 0.5, 1.0):
                spec = StaircaseSpec(eta, eta, 1.0, u_tilde=u, condensate_weight=w)
                values[w] = staircase(spec)[0].thermal_mean
            assert values[0.5] == pytest.approx(0.5 * (values[0.0] + values[1.0]), abs=1e-15)
            assert values[0.25] == pytest.approx(0.75 * values[0.0] + 0.25 * values[1.0], abs=1e-15)

    def test_monotone_unique_abscissae(self):
        records = staircase(StaircaseSpec(0.0, 1.0, 0.05, u_tilde=TWO_PI))
        etas = [r.eta for r in records]
        assert etas == sorted(set(etas))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            StaircaseSpec(0.0, 1.0, -0.1, u_tilde=1.0)
        with pytest.raises(ValueError):
            StaircaseSpec(0.0, 1.0, 0.1, u_tilde=1.0, condensate_weight=1.5)
        with pytest.raises(ValueError):
            StaircaseSpec(0.0, 1.0, 0.1, u_tilde=1.0, mode="magic")


class TestStaircaseNumeric:
    def test_agrees_with_analytic_on_coarse_grid(self):
        u = 2 * TWO_PI
        numeric = staircase(StaircaseSpec(0.0, 1.0, 0.25, u_tilde=u, mode="numeric"))
        analytic = staircase(StaircaseSpec(0.0, 1.0, 0.25, u_tilde=u, mode="analytic"))
        for n, a in zip(numeric, analytic):
            assert n.converged
            assert n.winding_T0 == a.winding_T0
            assert n.mu_eff == pytest.approx(a.mu_eff, rel=1e-6)

    def test_nonconvergence_flagged_but_sweep_continues(self):
        starved = SolverSettings(noise_amplitude=1e-3, max_iterations=3)
        records = staircase(
            StaircaseSpec(0.2, 0.4, 0.2, u_tilde=2 * TWO_PI, mode="numeric"), settings=starved
        )
        assert len(records) == 2
        assert all(not r.converged for r in records)


class TestLandscape:
    def test_symmetric_barrier_shape(self):
        result = landscape(0, [0.5], u_tilde=2 * TWO_PI, x_step=0.25)
        by_x = {round(p.x, 12): p.mu_eff for p in result.points}
        assert by_x[0.0] == pytest.approx(2.25, abs=1e-13)
        assert by_x[1.0] == pytest.approx(2.25, abs=1e-13)
        assert len(result.peaks) == 1
        peak = result.peaks[0]
        assert peak.x_peak == pytest.approx(0.5, abs=1e-15)
        assert peak.mu_peak == pytest.approx(3.25, abs=1e-13)

    def test_asymmetric_point_prefers_lower_winding(self):
        result = landscape(0, [0.3], u_tilde=2 * TWO_PI, x_step=0.5)
        by_x = {round(p.x, 12): p.mu_eff for p in result.points}
        assert by_x[0.0] < by_x[1.0]

    def test_peak_absent_outside_window(self):
        result = landscape(0, [3.0], u_tilde=0.2 * TWO_PI, x_step=0.5)
        assert result.peaks == []

    def test_rejects_degenerate_interaction(self):
        with pytest.raises(ValueError):
            landscape(0, [0.5], u_tilde=0.0, x_step=0.1)
        with pytest.raises(ValueError):
            landscape(0, [0.5], u_tilde=1.0, x_step=0.0)


class TestHysteresis:
    def test_flip_points_for_small_interaction(self):
        u = 0.2 * TWO_PI  # metastability half-window 0.2
        up = hysteresis(eta_grid(0.0, 1.0, 0.05), u, start_winding=0)
        flips_up = [r.eta for prev, r in zip(up, up[1:]) if r.winding != prev.winding]
        assert flips_up == [0.7]
        down = hysteresis(list(reversed(eta_grid(0.0, 1.0, 0.05))), u, start_winding=1)
        flips_down = [r.eta for prev, r in zip(down, down[1:]) if r.winding != prev.winding]
        assert flips_down == [0.3]

    def test_strong_interaction_keeps_winding_over_unit_loop(self):
        u = 2 * TWO_PI
        path = eta_grid(0.0, 1.0, 0.05)
        loop = path + path[-2::-1]
        records = hysteresis(loop, u, start_winding=0)
        assert all(r.winding == 0 for r in records)

    def test_vanishing_interaction_flips_at_half_without_hysteresis(self):
        u = 1e-9
        step = 0.05
        up = hysteresis(eta_grid(0.0, 1.0, step), u, start_winding=0)
        down = hysteresis(list(reversed(eta_grid(0.0, 1.0, step))), u, start_winding=1)
        flip_up = next(r.eta for prev, r in zip(up, up[1:]) if r.winding != prev.winding)
        flip_down = next(r.eta for prev, r in zip(down, down[1:]) if r.winding != prev.winding)
        assert abs(flip_up - 0.5) <= step + 1e-12
        assert abs(flip_down - 0.5) <= step + 1e-12

    def test_winding_changes_only_where_barrier_absent(self):
        u = 0.3 * TWO_PI
        path = eta_grid(0.0, 2.0, 0.1)
        records = hysteresis(path + path[-2::-1], u, start_winding=0)
        for prev, r in zip(records, records[1:]):
            if r.winding != prev.winding:
                assert r.barrier_height is None

    def test_loop_area_grows_with_interaction(self):
        step = 0.02
        path_up = eta_grid(0.0, 1.0, step)
        areas = []
        for u_over in (0.1, 0.2, 0.3):
            u = u_over * TWO_PI
            up = {r.eta: r.winding for r in hysteresis(path_up, u, 0)}
            down = {r.eta: r.winding for r in hysteresis(list(reversed(path_up)), u, 1)}
            areas.append(step * sum(down[e] - up[e] for e in path_up))
        assert areas[0] <= areas[1] <= areas[2]
        assert areas[0] < areas[2]

    def test_direction_labels(self):
        path = [0.0, 0.2, 0.4, 0.2, 0.0]
        records = hysteresis(path, TWO_PI, 0)
        assert [r.direction for r in records] == ["up", "up", "up", "down", "down"]

    def test_validation(self):
        with pytest.raises(ValueError):
            hysteresis([0.0, 1.5], TWO_PI, 0)  # step too large
        with pytest.raises(ValueError):
            hysteresis([], TWO_PI, 0)
        with pytest.raises(ValueError):
            hysteresis([0.0, 0.5], 0.0, 0)

    def test_record_type(self):
        record = hysteresis([0.1], TWO_PI, 0)[0]
        assert isinstance(record, HysteresisRecord)
        assert record.direction == "up"
        assert record.winding == 0
