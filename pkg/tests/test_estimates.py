"""Estimate harness: unit-scale runs of every experiment."""

import math

import numpy as np
import pytest

from grushin import estimates as E
from grushin import hermite as H
from grushin import spectral as S
from grushin.geometry import Dimensions, Point
from grushin.multnorm import LocalNormConfig

SEED = 90210


def points(norms):
    return [Point([v], [0.0]) for v in norms]


class TestFractionalRatio:
    def test_gamma_zero_is_identity(self, transform_grid):
        rep = E.fractional_ratio(0.0, 20, transform_grid, SEED)
        assert np.max(np.abs(rep.column("ratio") - 1.0)) < 1e-12

    def test_single_eigenfunction_gaussian_moment(self, transform_grid):
        # closed form: || u h_0(|xi|^(1/2) u) ||_2 based ratio equals 2^(-1/2)
        grid = transform_grid
        modes = grid.mode_indices()
        amps = np.zeros((len(modes), grid.n2_points), dtype=complex)
        kvec = grid.fft_indices(grid.n2_points)
        col = int(np.nonzero(kvec == 2)[0][0])
        amps[modes.index((0,)), col] = 1.0
        c = S.SpectralCoeffs(grid=grid, amplitudes=amps, zero_mode=np.zeros(grid.n1_points, dtype=complex))
        f = S.synthesize(c)
        num = E.apply_P_power(1.0, f).norm()
        den = math.sqrt(2.0) * 0.5  # lambda^(1/2) |xi|^(-1) at lambda = 2, |xi| = 2
        assert num / den == pytest.approx(2.0**-0.5, rel=1e-12)

    def test_max_stable_under_doubling(self, transform_grid):
        small = E.fractional_ratio(0.5, 60, transform_grid, SEED)
        big = E.fractional_ratio(0.5, 120, transform_grid, SEED)
        assert big.summary["max_ratio_first_half"] == pytest.approx(
            small.summary["max_ratio"], rel=1e-12
        )
        ratio = big.summary["max_ratio"] / small.summary["max_ratio"]
        assert 1.0 <= ratio <= 1.2


class TestRoughWeighted:
    def test_zero_multiplier_sentinel(self, plancherel_grid):
        from grushin.multipliers import Multiplier

        F = Multiplier(lambda lam: np.zeros_like(np.asarray(lam)), support=(1.0, 4.0))
        rep = E.rough_weighted_check(F, 0.4, points([1.0]), plancherel_grid)
        assert math.isnan(rep.column("ratio")[0])

    def test_gamma_zero_lhs_is_plancherel_sum(self, plancherel_grid):
        F = E.bump_on_window(1.0)
        y = Point([0.0], [0.0])
        rep = E.rough_weighted_check(F, 0.0, [y], plancherel_grid)
        coeffs = S.kernel_column_coeffs(F, y, plancherel_grid, "exclude")
        assert rep.column("lhs")[0] == pytest.approx(coeffs.norm_sq(), rel=1e-10)

    def test_bounded_over_samples(self, weighted_base_grid):
        F = E.bump_on_window(1.0)
        rep = E.rough_weighted_check(F, 0.4, points(np.arange(0.0, 8.1, 1.0)), weighted_base_grid)
        vals = rep.column("ratio")
        assert np.all(np.isfinite(vals))
        assert vals.max() < 1.0


class TestWeightedPlancherel:
    def test_hypothesis_enforced(self, plancherel_grid):
        with pytest.raises(ValueError):
            E.weighted_plancherel_ratio(E.bump_on_window(1.0), 0.6, 1.0, points([1.0]), plancherel_grid)

    def test_support_violation_rejected(self, plancherel_grid):
        with pytest.raises(ValueError):
            E.weighted_plancherel_ratio(E.bump_on_window(2.0), 0.4, 1.0, points([1.0]), plancherel_grid)

    def test_gamma_zero_reduces_to_unweighted(self, plancherel_grid):
        from grushin.geometry import ball_volume_formula

        F = E.bump_on_window(1.0)
        y = Point([1.0], [0.0])
        rep = E.weighted_plancherel_ratio(F, 0.0, 1.0, [y], plancherel_grid)
        K = S.kernel_column(F, y, plancherel_grid, "exclude")
        expected = math.sqrt(ball_volume_formula(y, 1.0)) * K.norm() / rep.summary["denominator"]
        assert rep.column("ratio")[0] == pytest.approx(expected, rel=1e-12)

    def test_denominator_reparameterization_invariant(self):
        # || F_(R^2) ||_L2[1,4] is invariant under F -> F_(c), R -> R sqrt(c)
        F = E.bump_on_window(1.0)
        c = 4.0
        from grushin.multipliers import Multiplier

        Fc = Multiplier(lambda lam: F(np.asarray(lam) * c), support=(0.25, 1.0))
        a = E.window_l2_norm(F, 1.0)
        b = E.window_l2_norm(Fc, 1.0 / math.sqrt(c))
        assert a == pytest.approx(b, rel=1e-12)

    def test_failure_regime_series_diverges(self):
        # the layer series behind the weighted estimate: converges for
        # gamma < d2/2, grows without stabilizing at gamma above it
        def partial(gamma, n_max):
            layers = np.arange(1, n_max + 1, 2)
            q_half = 1.5
            return sum(
                float(N) ** (2 * gamma - q_half) * H.layer_sum(1, int(N), [0.0])
                for N in layers
            )

        stable = [partial(0.4, m) for m in (401, 801, 1601)]
        growing = [partial(0.6, m) for m in (401, 801, 1601)]
        # converging series: increments shrink; divergent: increments grow
        assert (stable[2] - stable[1]) < 0.95 * (stable[1] - stable[0])
        assert (growing[2] - growing[1]) > 1.05 * (growing[1] - growing[0])
        assert growing[2] > 1.3 * growing[0]


class TestWeightedL2Full:
    def test_alpha_zero_matches_weighted_plancherel_numerator(self, plancherel_grid):
        F = E.bump_on_window(1.0)
        y = points([1.0])
        full = E.weighted_l2_full_check(F, 0.0, 1.5, 0.4, 1.0, y, plancherel_grid)
        plain = E.weighted_plancherel_ratio(F, 0.4, 1.0, y, plancherel_grid)
        lhs_full = full.column("ratio")[0] * full.summary["denominator"]
        lhs_plain = plain.column("ratio")[0] * plain.summary["denominator"]
        assert lhs_full == pytest.approx(lhs_plain, rel=1e-10)

    def test_ratio_grows_as_beta_drops(self, plancherel_grid):
        F = E.bump_on_window(1.0)
        vals = [
            E.weighted_l2_full_check(F, 0.5, b, 0.4, 1.0, points([1.0]), plancherel_grid).summary["sup_ratio"]
            for b in (2.5, 1.8, 1.2, 0.8)
        ]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_beta_hypothesis_enforced(self, plancherel_grid):
        with pytest.raises(ValueError):
            E.weighted_l2_full_check(E.bump_on_window(1.0), 1.0, 0.5, 0.4, 1.0, points([1.0]), plancherel_grid)

    def test_scale_uniformity(self, plancherel_grid):
        sups = []
        for R in (0.5, 1.0, 2.0):
            grid_r = E.dilated_grid(plancherel_grid, R)
            ys = points(np.array([0.0, 1.0, 2.0]) / R)
            rep = E.weighted_l2_full_check(
                E.bump_on_window(R), 0.5, 1.6, 0.4, R, ys, grid_r
            )
            sups.append(rep.summary["sup_ratio"])
        assert max(sups) / min(sups) < 3.0


class TestCommonKernelNorm:
    def test_three_estimates_share_the_subexpression(self, plancherel_grid):
        # at gamma = alpha = 0 the three weighted estimates reduce to the
        # same unweighted kernel energy
        from grushin.geometry import ball_volume_formula

        F = E.bump_on_window(1.0)
        y = Point([1.0], [0.0])
        rough = E.rough_weighted_check(F, 0.0, [y], plancherel_grid)
        plain = E.weighted_plancherel_ratio(F, 0.0, 1.0, [y], plancherel_grid)
        full = E.weighted_l2_full_check(F, 0.0, 1.5, 0.0, 1.0, [y], plancherel_grid)
        vol_half = math.sqrt(ball_volume_formula(y, 1.0))
        k_rough = math.sqrt(rough.column("lhs")[0])
        k_plain = plain.column("ratio")[0] * plain.summary["denominator"] / vol_half
        k_full = full.column("ratio")[0] * full.summary["denominator"] / vol_half
        assert abs(k_plain - k_rough) <= 1e-12 * k_rough
        assert abs(k_full - k_rough) <= 1e-12 * k_rough


class TestOffballL1:
    def test_zero_multiplier(self, plancherel_grid):
        from grushin.multipliers import Multiplier

        F = Multiplier(lambda lam: np.zeros_like(np.asarray(lam)), support=(1.0, 4.0))
        assert E.offball_l1(F, 1.0, 2.5, 0.0, 1.0, Point([1.0], [0.0]), plancherel_grid) == 0.0

    def test_full_l1_finite(self, weighted_base_grid):
        ratio = E.offball_l1(E.bump_on_window(1.0), 1.0, 2.6, 0.0, 1.0, Point([1.0], [0.0]), weighted_base_grid)
        assert 0.0 < ratio < 1.0

    def test_bounded_along_radii(self, weighted_base_grid):
        F = E.bump_on_window(1.0)
        y = Point([1.0], [0.0])
        vals = [
            E.offball_l1(F, 1.0, 2.6, r, 1.0, y, weighted_base_grid) for r in (0.0, 1.0, 2.0, 4.0)
        ]
        assert max(vals) < 1.0
        assert max(vals) / min(vals) < 5.0

    def test_escaping_radius_rejected(self, plancherel_grid):
        with pytest.raises(ValueError):
            E.offball_l1(E.bump_on_window(1.0), 1.0, 2.6, 50.0, 1.0, Point([1.0], [0.0]), plancherel_grid)

    def test_beta_hypothesis_enforced(self, plancherel_grid):
        with pytest.raises(ValueError):
            E.offball_l1(E.bump_on_window(1.0), 1.0, 1.5, 0.0, 1.0, Point([1.0], [0.0]), plancherel_grid)


class TestHeatDiagonal:
    def test_degenerate_base_point_rejected(self, heat_grid):
        with pytest.raises(ValueError):
            E.heat_diagonal_limit(Point([0.0], [0.0]), [0.25], heat_grid)

    def test_delocalized_rejected(self, heat_grid):
        with pytest.raises(ValueError):
            E.heat_diagonal_limit(Point([1.0], [0.0]), [50.0], heat_grid)

    def test_mehler_oracle_agreement(self, heat_grid):
        # closed-form fiber diagonal, independent of the Hermite recurrence:
        # sqrt(s / (2 pi sinh(2ts))) exp(-s y^2 tanh(ts))
        from grushin.multipliers import heat as heat_mult

        t, ynorm = 0.125, 1.0
        grid = heat_grid
        xi = np.abs(grid.xi_vectors()[:, 0])
        xi = xi[xi > 0]
        fiber = np.sqrt(xi / (2 * np.pi * np.sinh(2 * t * xi))) * np.exp(
            -xi * ynorm**2 * np.tanh(t * xi)
        )
        zero = np.sum(np.exp(-t * np.sum(grid.eta_vectors() ** 2, axis=1))) / (
            grid.x2_period * 2 * grid.x1_halfwidth
        )
        oracle = float(np.sum(fiber) / grid.x2_period + zero)
        diag = S.kernel_diagonal(heat_mult(t), Point([ynorm], [0.0]), grid, "euclidean", lambda_max=45.0 / t)
        assert diag == pytest.approx(oracle, rel=1e-9)


class TestGaussianBound:
    def test_positivity_and_stability(self, gaussian_grid):
        rep = E.gaussian_bound_check([0.25, 0.125, 0.0625], points([0.5, 1.0, 1.5]), gaussian_grid)
        assert rep.summary["min_p_over_all"] > -1e-10
        assert rep.summary["b_min"] > 0.0
        assert rep.summary["b_variation"] < 1.25
        assert np.all(np.isfinite(rep.column("C")))


class TestImaginaryPower:
    def test_t_grid_validation(self):
        with pytest.raises(ValueError):
            E.imaginary_power_mw_growth(1.0, [0.5, 2.0])

    def test_config_order_consistency(self):
        with pytest.raises(ValueError):
            E.imaginary_power_mw_growth(1.0, [2.0, 4.0], LocalNormConfig(s=2.0, t_grid=[1.0]))


class TestBochnerRiesz:
    def test_sharp_cutoff_needs_exploratory(self, riesz_grid):
        with pytest.raises(ValueError):
            E.bochner_riesz_sup(0.0, [0.5], points([0.0]), riesz_grid)

    def test_spectral_clipping_rejected(self, riesz_grid):
        with pytest.raises(ValueError):
            E.bochner_riesz_sup(1.01, [1e-4], points([0.0]), riesz_grid)

    def test_smooth_order_small_and_flat_at_small_t(self, riesz_grid):
        rep = E.bochner_riesz_sup(20.0, [2.0**-k for k in range(3, 7)], points([0.0, 1.0]), riesz_grid)
        vals = rep.column("sup_l1")
        assert vals.max() < 3.5
        assert vals.max() / vals.min() < 1.35


class TestDilatedGrid:
    def test_scaling_consistency(self, plancherel_grid):
        g2 = E.dilated_grid(plancherel_grid, 2.0)
        assert g2.x1_halfwidth == plancherel_grid.x1_halfwidth / 2.0
        assert g2.x2_period == plancherel_grid.x2_period / 4.0
        lo1, hi1 = plancherel_grid.resolved_lambda_bounds()
        lo2, hi2 = g2.resolved_lambda_bounds()
        assert lo2 == pytest.approx(4.0 * lo1)
        assert hi2 == pytest.approx(4.0 * hi1)
