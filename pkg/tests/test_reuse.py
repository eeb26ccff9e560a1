import math

import numpy as np
import pytest
from scipy.stats import kstest

from robkit.gridspec import GridScheme, build_grid
from robkit.indicators import Indicator, layered_oracle, layered_scriptp
from robkit.reuse import (
    CorruptedInputError,
    OutOfRangeError,
    RobustnessCurve,
    binary_decomposition,
    chernoff_n,
    estimate_curve,
    hsra,
    interpolate,
    predicted_speedup,
    radial_sampling,
    ssra,
)
from robkit.segfun import SegFun
from robkit.uncsample import DirectionSample, NormKind, UncertaintyInstance


class ScriptedRng:
    """Stands in for a Generator; replays queued uniform draws."""

    def __init__(self, draws):
        self.draws = list(draws)
        self.requested_bounds = []

    def uniform(self, lo, hi):
        self.requested_bounds.append((lo, hi))
        return self.draws.pop(0)


def unit_direction():
    return DirectionSample(UncertaintyInstance(np.array([1.0, 0.0])), NormKind.L2)


def norm_threshold_indicator(threshold):
    return Indicator(
        lambda d: int(np.linalg.norm(d.coords) < threshold),
        f"norm below {threshold}",
    )


class TestRadialSampling:
    def test_hand_traced_backward_sweep(self):
        g = build_grid(GridScheme.UNIFORM, 2.0, 1.0, 3)
        rng = ScriptedRng([0.9, 0.3])
        run = radial_sampling(unit_direction(), g, norm_threshold_indicator(0.6), rng)
        assert run.segments.rows == [(1, 2, 1), (3, 3, 0)]
        assert run.simulations_used == 2
        # first draw from [0, r_3], second from [0, r_2]
        assert rng.requested_bounds == [(0.0, 1.0), (0.0, 0.75)]

    def test_constant_one_indicator(self):
        g = build_grid(GridScheme.GEOMETRIC, 4.0, 1.0, 8)
        rng = ScriptedRng([0.9, 0.2, 0.01, 0.001, 0.0001, 1e-5, 1e-6, 1e-7])
        run = radial_sampling(unit_direction(), g, Indicator(lambda d: 1, "one"), rng)
        assert run.segments.rows == [(1, 8, 1)]

    def test_constant_zero_indicator(self):
        g = build_grid(GridScheme.GEOMETRIC, 4.0, 1.0, 8)
        rng = ScriptedRng([0.9, 0.2, 0.01, 0.001, 0.0001, 1e-5, 1e-6, 1e-7])
        run = radial_sampling(unit_direction(), g, Indicator(lambda d: 0, "zero"), rng)
        assert run.segments.rows == [(1, 8, 0)]

    def test_indicator_failure_propagates(self):
        g = build_grid(GridScheme.UNIFORM, 2.0, 1.0, 3)

        def broken(delta):
            raise RuntimeError("boom")

        with pytest.raises(RuntimeError):
            radial_sampling(
                unit_direction(), g, Indicator(broken, "broken"), ScriptedRng([0.5])
            )

    def test_value_at_index_uses_uniform_radius_on_prefix(self):
        # the radius attached to index i must be distributed U[0, r_i]:
        # pooled over many directions, KS per index against the uniform law
        g = build_grid(GridScheme.GEOMETRIC, math.e, 1.0, 12)
        ind = layered_oracle(20, 11, 19)
        collected = {i: [] for i in (0, 5, 11)}
        from robkit.uncsample import SeededStream, sample_surface

        for k in range(2000):
            u = sample_surface(5, NormKind.L2, SeededStream(77, 2 * k))
            run = radial_sampling(
                u, g, ind, SeededStream(77, 2 * k + 1), k, record_radii=True
            )
            for i in collected:
                collected[i].append(run.radii_by_index[i] / g.radii[i])
        for i, vals in collected.items():
            assert kstest(np.array(vals), "uniform").pvalue > 0.001


class TestDecompositionAndSpeedup:
    def test_decomposition_1000(self):
        assert binary_decomposition(1000) == [8, 32, 64, 128, 256, 512]

    def test_decomposition_powers(self):
        assert binary_decomposition(8) == [8]
        assert binary_decomposition(255) == [1, 2, 4, 8, 16, 32, 64, 128]

    def test_speedup_single_group(self):
        # one group of 8: hierarchical model cost 8*log2(8), sequential 70/2
        assert predicted_speedup(8) == pytest.approx(70.0 / 48.0)

    def test_speedup_grows_superlinearly(self):
        assert predicted_speedup(1024) > 50.0
        assert predicted_speedup(1024) > 2 * predicted_speedup(256)


class TestAlgorithms:
    def test_single_direction_no_merge(self):
        g = build_grid(GridScheme.GEOMETRIC, math.e, 1.0, 20)
        h, rep = ssra(1, g, layered_oracle(20, 11, 19), 5, seed=3)
        assert rep.merge_row_visits == 0
        assert rep.n_samples == 1

    def test_two_constant_directions(self):
        g = build_grid(GridScheme.UNIFORM, 2.0, 1.0, 6)
        h, rep = ssra(2, g, Indicator(lambda d: 1, "one"), 3, seed=0)
        assert h.rows == [(1, 6, 2)]
        assert rep.merge_row_visits == 2

    def test_hsra_equals_ssra(self):
        g = build_grid(GridScheme.GEOMETRIC, math.e, 1.0, 200)
        ind = layered_oracle(20, 11, 19)
        h1, rep1 = ssra(100, g, ind, 10, seed=5)
        h2, rep2 = hsra(100, g, ind, 10, seed=5)
        assert h1.rows == h2.rows
        assert rep1.total_simulations == rep2.total_simulations

    def test_hsra_group_sizes(self):
        g = build_grid(GridScheme.GEOMETRIC, math.e, 1.0, 30)
        _, rep = hsra(100, g, layered_oracle(20, 11, 19), 5, seed=5)
        assert rep.group_sizes == [4, 32, 64]
        assert rep.tau == 3

    def test_results_independent_of_algorithm_but_not_seed(self):
        g = build_grid(GridScheme.GEOMETRIC, math.e, 1.0, 50)
        ind = layered_oracle(20, 11, 19)
        h1, _ = hsra(60, g, ind, 10, seed=1)
        h2, _ = hsra(60, g, ind, 10, seed=2)
        assert h1.rows != h2.rows

    def test_measured_meq_tracks_prediction(self):
        g = build_grid(GridScheme.GEOMETRIC, math.e, 1.0, 300)
        _, rep = ssra(1500, g, layered_oracle(20, 11, 19), 10, seed=9)
        se = rep.simulations_std / math.sqrt(rep.n_samples)
        assert abs(rep.measured_meq - rep.predicted_meq) < 3 * se
        # the mean bound: the prediction sits below 1 + ln(lambda)
        assert rep.predicted_meq < 1 + math.log(g.lam)

    def test_estimator_unbiased_on_layered_oracle(self):
        g = build_grid(GridScheme.GEOMETRIC, 2.5, 1.0, 25)
        n = 1500
        h, _ = hsra(n, g, layered_oracle(20, 11, 19), 8, seed=21)
        curve = estimate_curve(h, n, g)
        truth = np.array([layered_scriptp(20, 11, 19, r) for r in g.radii])
        band = 5 * np.sqrt(truth * (1 - truth) / n) + 5e-3
        assert np.all(np.abs(curve.values - truth) < band)


class TestChernoff:
    def test_published_sizes(self):
        assert chernoff_n(0.05, 0.05) == 738
        assert chernoff_n(0.01, 0.01) == 26492
        assert chernoff_n(0.005, 0.005) == 119830
        assert chernoff_n(0.001, 0.001) == 3800452

    def test_rejects_bad_arguments(self):
        with pytest.raises(OutOfRangeError):
            chernoff_n(0.0, 0.5)
        with pytest.raises(OutOfRangeError):
            chernoff_n(0.5, 1.5)


class TestCurve:
    def test_all_success(self):
        g = build_grid(GridScheme.UNIFORM, 2.0, 1.0, 4)
        curve = estimate_curve(SegFun.constant(4, 10), 10, g)
        assert np.all(curve.values == 1.0)
        assert np.all(curve.inf_values == 1.0)

    def test_running_infimum(self):
        g = build_grid(GridScheme.UNIFORM, 2.0, 1.0, 2)
        curve = estimate_curve(SegFun.from_rows(2, [(1, 1, 10), (2, 2, 5)]), 10, g)
        assert np.allclose(curve.values, [1.0, 0.5])
        assert np.allclose(curve.inf_values, [1.0, 0.5])

    def test_counts_above_n_rejected(self):
        g = build_grid(GridScheme.UNIFORM, 2.0, 1.0, 2)
        with pytest.raises(CorruptedInputError):
            estimate_curve(SegFun.constant(2, 11), 10, g)

    def test_interpolation(self):
        g = build_grid(GridScheme.UNIFORM, 2.0, 1.0, 2)
        curve = RobustnessCurve(
            g, "script_p", np.array([0.8, 1.0]), np.array([0.8, 0.8]), 10
        )
        mid = 0.5 * (g.radii[0] + g.radii[1])
        assert interpolate(curve, mid) == pytest.approx(0.9)
        assert interpolate(curve, g.radii[1]) == 1.0
        with pytest.raises(OutOfRangeError):
            interpolate(curve, 2.0)
