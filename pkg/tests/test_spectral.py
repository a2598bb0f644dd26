"""Discrete diagonalization: transforms, multiplier action, kernel columns."""

import math

import numpy as np
import pytest

from grushin import hermite as H
from grushin import spectral as S
from grushin.geometry import Dimensions, Point
from grushin.multipliers import JointMultiplier, Multiplier, exp_bump, heat

SEED = 777


def unit_coeffs(grid, entries, zero_entries=()):
    """Coefficients from a list of (multi-index, xi lattice integer(s), amp)."""
    modes = grid.mode_indices()
    n_xi = grid.n2_points ** grid.dims.d2
    amps = np.zeros((len(modes), n_xi), dtype=complex)
    kvec = grid.fft_indices(grid.n2_points)
    for n, k, amp in entries:
        col = int(np.nonzero(kvec == k)[0][0])
        amps[modes.index(tuple(np.atleast_1d(n)))] = 0.0
        amps[modes.index(tuple(np.atleast_1d(n))), col] = amp
    zero = np.zeros(grid.n1_points ** grid.dims.d1, dtype=complex)
    keta = grid.fft_indices(grid.n1_points)
    for k, amp in zero_entries:
        zero[int(np.nonzero(keta == k)[0][0])] = amp
    return S.SpectralCoeffs(grid=grid, amplitudes=amps, zero_mode=zero)


class TestGridValidation:
    def test_power_of_two_required(self):
        with pytest.raises(ValueError):
            S.TorusGrid(Dimensions(1, 1), 16.0, 100, 2 * np.pi, 128, 41)

    def test_box_invariant_enforced(self):
        with pytest.raises(ValueError):
            S.TorusGrid(Dimensions(1, 1), 10.0, 128, 2 * np.pi, 128, 41)

    def test_resolved_bounds_reported(self, transform_grid):
        lo, hi = transform_grid.resolved_lambda_bounds()
        assert lo == pytest.approx(1.0)
        assert lo < hi


class TestTransforms:
    def test_zero_field(self, transform_grid):
        f = S.Field(transform_grid, np.zeros(transform_grid.x1_shape + transform_grid.x2_shape, dtype=complex))
        c = S.analyze(f)
        assert np.all(c.amplitudes == 0) and np.all(c.zero_mode == 0)
        assert c.residual == 0.0

    def test_single_mode_roundtrip(self, transform_grid):
        c = unit_coeffs(transform_grid, [((3,), 1, 1.0)])
        f = S.synthesize(c)
        # pointwise equality with the scaled Hermite mode, period-normalized
        xs = transform_grid.x1_axis
        expected = (
            np.array([H.hermite_eval(3, x) for x in xs])[:, None]
            * np.exp(1j * transform_grid.x2_axis)[None, :]
            / math.sqrt(transform_grid.x2_period)
        )
        assert np.max(np.abs(f.samples - expected)) < 1e-8
        c2 = S.analyze(f)
        assert abs(c2.amplitudes[transform_grid.mode_indices().index((3,)), 1] - 1.0) < 1e-10
        others = c2.amplitudes.copy()
        others[transform_grid.mode_indices().index((3,)), 1] = 0.0
        assert np.max(np.abs(others)) < 1e-8
        assert abs(c2.residual) < 1e-8

    def test_random_band_limited_roundtrips(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        for _ in range(5):
            c = S.random_band_limited(transform_grid, rng)
            f = S.synthesize(c)
            c2 = S.analyze(f)
            delta = np.sqrt(
                np.sum(np.abs(c2.amplitudes - c.amplitudes) ** 2)
                + np.sum(np.abs(c2.zero_mode - c.zero_mode) ** 2)
            )
            assert delta < 1e-10  # coefficients have unit norm
            assert abs(f.norm_sq() - c.norm_sq()) < 1e-10
            f2 = S.synthesize(c2)
            assert np.max(np.abs(f2.samples - f.samples)) < 1e-8

    def test_out_of_band_energy_reported_not_fatal(self, transform_grid):
        # a spatial spike has Hermite content far beyond the retained band;
        # analyze must report the unaccounted energy, not fail
        g = transform_grid
        samples = np.zeros(g.x1_shape + g.x2_shape, dtype=complex)
        # spike in the elliptic block riding a nonzero frequency: its
        # Hermite expansion extends far beyond the retained band
        samples[g.n1_points // 2, :] = np.exp(1j * g.x2_axis)
        f = S.Field(g, samples)
        c = S.analyze(f)
        assert c.residual > 0.1 * f.norm_sq()
        assert c.residual <= f.norm_sq() * (1 + 1e-12)

    def test_zero_fiber_absolute_basis(self, transform_grid):
        # a single box Fourier coefficient synthesizes the plane wave in
        # absolute coordinates, not the index-shifted one
        c = unit_coeffs(transform_grid, [], zero_entries=[(3, 1.0)])
        f = S.synthesize(c)
        eta = 3.0 * math.pi / transform_grid.x1_halfwidth
        expected = (
            np.exp(1j * eta * transform_grid.x1_axis)[:, None]
            * np.ones(transform_grid.n2_points)[None, :]
            / math.sqrt(2.0 * transform_grid.x1_halfwidth * transform_grid.x2_period)
        )
        assert np.max(np.abs(f.samples - expected)) < 1e-12


class TestEigenvalue:
    def test_plug_in(self):
        assert S.eigenvalue(3, [2.0])[0] == pytest.approx(14.0)
        vec = S.eigenvalue([0, 0], [1.0])
        assert np.allclose(vec, [1.0, 1.0])

    def test_homogeneity(self):
        r = 3.0
        lhs = S.eigenvalue([2], [r**2 * 0.7])
        rhs = r**2 * S.eigenvalue([2], [0.7])
        assert np.allclose(lhs, rhs)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            S.eigenvalue([0], [0.0])


class TestApplyL:
    def test_identity_multiplier(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(transform_grid, rng)
        one = Multiplier(lambda lam: np.ones_like(np.asarray(lam)), support=(-np.inf, np.inf))
        out = S.apply_L(one, c, "euclidean")
        assert np.allclose(out.amplitudes, c.amplitudes)
        assert np.allclose(out.zero_mode, c.zero_mode)

    def test_heat_output_real_for_real_input(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(transform_grid, rng)
        f = S.synthesize(c)
        real_field = S.Field(transform_grid, f.samples.real.astype(complex))
        smoothed = S.synthesize(S.apply_L(heat(0.3), S.analyze(real_field), "euclidean"))
        assert np.max(np.abs(smoothed.samples.imag)) < 1e-10

    def test_projection_idempotent(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(transform_grid, rng)
        proj = Multiplier(
            lambda lam: ((np.asarray(lam) >= 1.0) & (np.asarray(lam) <= 3.0)).astype(float),
            support=(-np.inf, np.inf),
            smoothness="indicator",
        )
        once = S.apply_L(proj, c, "euclidean")
        twice = S.apply_L(proj, once, "euclidean")
        assert np.array_equal(once.amplitudes, twice.amplitudes)
        assert np.array_equal(once.zero_mode, twice.zero_mode)

    def test_exclude_policy_zeroes_fiber(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(transform_grid, rng)
        one = Multiplier(lambda lam: np.ones_like(np.asarray(lam)), support=(-np.inf, np.inf))
        out = S.apply_L(one, c, "exclude")
        assert np.all(out.zero_mode == 0)


class TestApplyJoint:
    def test_identity_on_support(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(transform_grid, rng, include_zero_mode=False)
        xi_max = math.pi / transform_grid.hx2
        G = JointMultiplier(lambda lam, xi: 1.0, xi_support=(1e-9, 2 * xi_max))
        out = S.apply_joint(G, c)
        assert np.allclose(out.amplitudes, c.amplitudes)

    def test_eigen_relation(self, transform_grid):
        c = unit_coeffs(transform_grid, [((2,), 1, 1.0)])
        G = JointMultiplier(lambda lam, xi: lam[0], xi_support=(0.5, 64.0))
        out = S.apply_joint(G, c)
        idx = transform_grid.mode_indices().index((2,))
        assert out.amplitudes[idx, 1] == pytest.approx(5.0)  # |xi| (2n+1) = 5

    def test_composition(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(transform_grid, rng, include_zero_mode=False)
        g1 = JointMultiplier(lambda lam, xi: np.exp(-lam.sum()), xi_support=(0.5, 64.0))
        g2 = JointMultiplier(lambda lam, xi: 1.0 / (1.0 + xi[0] ** 2), xi_support=(0.5, 64.0))
        g12 = JointMultiplier(
            lambda lam, xi: np.exp(-lam.sum()) / (1.0 + xi[0] ** 2), xi_support=(0.5, 64.0)
        )
        a = S.apply_joint(g1, S.apply_joint(g2, c))
        b = S.apply_joint(g12, c)
        assert np.max(np.abs(a.amplitudes - b.amplitudes)) < 1e-12

    def test_frequency_derivative(self, transform_grid):
        # G = xi_1 acts as the exact frequency of each lattice exponential
        c = unit_coeffs(transform_grid, [((0,), 3, 1.0), ((1,), -2, 0.5)])
        G = JointMultiplier(lambda lam, xi: xi[0], xi_support=(0.5, 64.0))
        out = S.apply_joint(G, c)
        modes = transform_grid.mode_indices()
        kvec = transform_grid.fft_indices(transform_grid.n2_points)
        col3 = int(np.nonzero(kvec == 3)[0][0])
        colm2 = int(np.nonzero(kvec == -2)[0][0])
        assert out.amplitudes[modes.index((0,)), col3] == pytest.approx(3.0)
        assert out.amplitudes[modes.index((1,)), colm2] == pytest.approx(-1.0)

    def test_zero_fiber_flagged(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(transform_grid, rng, include_zero_mode=True)
        G = JointMultiplier(lambda lam, xi: 1.0, xi_support=(0.5, 64.0))
        out = S.apply_joint(G, c)
        assert any("zero_mode" in note for note in out.notes)
        assert np.array_equal(out.zero_mode, c.zero_mode)

    def test_zero_support_rejected(self):
        with pytest.raises(ValueError):
            JointMultiplier(lambda lam, xi: 1.0, xi_support=(0.0, 1.0))


class TestPowers:
    def test_p_power_identity_and_plug_in(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        f = S.synthesize(S.random_band_limited(transform_grid, rng))
        same = S.apply_P_power(0.0, f)
        assert np.array_equal(same.samples, f.samples)
        squared = S.apply_P_power(2.0, f)
        i = int(np.argmin(np.abs(transform_grid.x1_axis - 3.0)))
        x = transform_grid.x1_axis[i]
        assert squared.samples[i, 5] == pytest.approx(x * x * f.samples[i, 5], rel=1e-13)

    def test_p_power_norm_bound(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        f = S.synthesize(S.random_band_limited(transform_grid, rng))
        gamma = 1.5
        bound = (transform_grid.x1_halfwidth * math.sqrt(1)) ** gamma
        assert S.apply_P_power(gamma, f).norm() <= bound * f.norm() * (1 + 1e-12)

    def test_t_power_composition(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(transform_grid, rng, include_zero_mode=False)
        a = S.apply_T_power(0.7, S.apply_T_power(0.3, c))
        b = S.apply_T_power(1.0, c)
        assert np.max(np.abs(a.amplitudes - b.amplitudes)) < 1e-12

    def test_t_power_identity(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(transform_grid, rng)
        out = S.apply_T_power(0.0, c)
        assert np.array_equal(out.amplitudes, c.amplitudes)
        assert np.array_equal(out.zero_mode, c.zero_mode)

    def test_negative_t_power_guard(self, transform_grid):
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(transform_grid, rng, include_zero_mode=True)
        with pytest.raises(ValueError):
            S.apply_T_power(-1.0, c)
        empty = S.random_band_limited(transform_grid, rng, include_zero_mode=False)
        out = S.apply_T_power(-1.0, empty)
        assert np.all(np.isfinite(out.amplitudes))


class TestKernelColumn:
    def test_zero_multiplier(self, plancherel_grid):
        F = Multiplier(lambda lam: np.zeros_like(np.asarray(lam)), support=(1.0, 4.0))
        K = S.kernel_column(F, Point([1.0], [0.0]), plancherel_grid)
        assert np.all(K.samples == 0)

    def test_hermitian_symmetry_on_grid_points(self, plancherel_grid):
        F = exp_bump(1.0, 4.0)
        g = plancherel_grid
        ia, ib = 130, 140  # arbitrary grid indices
        ja, jb = 0, 7
        ya = Point([g.x1_axis[ia]], [g.x2_axis[ja]])
        yb = Point([g.x1_axis[ib]], [g.x2_axis[jb]])
        Ka = S.kernel_column(F, ya, g, "exclude")
        Kb = S.kernel_column(F, yb, g, "exclude")
        assert Ka.samples[ib, jb] == pytest.approx(np.conj(Kb.samples[ia, ja]), abs=1e-8)

    def test_coefficient_space_norm_identity(self, plancherel_grid):
        # grid-quadrature norm of the column equals the coefficient sum
        F = exp_bump(1.0, 4.0)
        y = Point([0.5], [0.0])
        c = S.kernel_column_coeffs(F, y, plancherel_grid, "exclude")
        K = S.synthesize(c)
        assert K.norm_sq() == pytest.approx(c.norm_sq(), rel=1e-10)

    def test_diagonal_matches_field(self, plancherel_grid):
        F = exp_bump(1.0, 4.0)
        g = plancherel_grid
        i1 = 150
        y = Point([g.x1_axis[i1]], [g.x2_axis[3]])
        K = S.kernel_column(F, y, g, "euclidean")
        diag = S.kernel_diagonal(F, y, g, "euclidean")
        assert K.samples[i1, 3].real == pytest.approx(diag, rel=1e-10)
        assert abs(K.samples[i1, 3].imag) < 1e-12

    def test_out_of_box_rejected(self, plancherel_grid):
        F = exp_bump(1.0, 4.0)
        with pytest.raises(ValueError):
            S.kernel_column(F, Point([100.0], [0.0]), plancherel_grid)

    def test_support_contract_enforced(self, plancherel_grid):
        leaky = Multiplier(lambda lam: np.ones_like(np.asarray(lam)), support=(1.0, 4.0))
        with pytest.raises(ValueError):
            S.kernel_column(leaky, Point([0.0], [0.0]), plancherel_grid, "exclude")


class TestHigherDimensions:
    def test_d1_two_roundtrip(self):
        grid = S.TorusGrid(Dimensions(2, 1), 10.0, 128, 2 * np.pi, 16, 6)
        modes = grid.mode_indices()
        assert (0, 0) in modes and (1, 1) in modes
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(grid, rng, include_zero_mode=True, eta_fraction=0.2)
        f = S.synthesize(c)
        c2 = S.analyze(f)
        delta = np.sqrt(
            np.sum(np.abs(c2.amplitudes - c.amplitudes) ** 2)
            + np.sum(np.abs(c2.zero_mode - c.zero_mode) ** 2)
        )
        assert delta < 1e-10
        assert abs(f.norm_sq() - 1.0) < 1e-10

    def test_d2_two_roundtrip(self):
        grid = S.TorusGrid(Dimensions(1, 2), 12.0, 64, 2 * np.pi, 16, 9)
        rng = np.random.Generator(np.random.PCG64(SEED))
        c = S.random_band_limited(grid, rng, include_zero_mode=True, eta_fraction=0.2)
        f = S.synthesize(c)
        c2 = S.analyze(f)
        delta = np.sqrt(
            np.sum(np.abs(c2.amplitudes - c.amplitudes) ** 2)
            + np.sum(np.abs(c2.zero_mode - c.zero_mode) ** 2)
        )
        assert delta < 1e-10

    def test_d2_two_kernel_plancherel(self):
        grid = S.TorusGrid(Dimensions(1, 2), 12.0, 64, 2 * np.pi, 16, 9)
        lo, hi = grid.resolved_lambda_bounds()
        F = exp_bump(lo * 1.2, min(hi * 0.9, lo * 4.0))
        y = Point([0.5], [0.0, 0.0])
        c = S.kernel_column_coeffs(F, y, grid, "exclude")
        K = S.synthesize(c)
        assert K.norm_sq() == pytest.approx(c.norm_sq(), rel=1e-10)


class TestDifferentialConsistency:
    def test_fd_convergence_slope(self):
        dims = Dimensions(1, 1)
        recipe = [((0,), 1, 1.0), ((3,), 1, 0.5 + 0.2j), ((7,), -1, 0.3j), ((1,), 2, 0.25)]
        zero_recipe = [(0, 0.5), (3, 0.2 + 0.1j), (-5, 0.15)]
        ident = Multiplier(lambda lam: np.asarray(lam), support=(-np.inf, np.inf))
        errs = []
        for n in (128, 256, 512):
            grid = S.TorusGrid(dims, 16.0, n, 2 * np.pi, n, 25)
            c = unit_coeffs(grid, recipe, zero_recipe)
            f = S.synthesize(c)
            exact = S.synthesize(S.apply_L(ident, c, "euclidean"))
            u = f.samples
            lap1 = (np.roll(u, 1, 0) - 2 * u + np.roll(u, -1, 0)) / grid.hx1**2
            lap2 = (np.roll(u, 1, 1) - 2 * u + np.roll(u, -1, 1)) / grid.hx2**2
            fd = -lap1 - (grid.x1_axis[:, None] ** 2) * lap2
            err = np.sqrt(np.sum(np.abs(fd - exact.samples) ** 2) * grid.cell_volume)
            errs.append(err / exact.norm())
        slopes = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        assert np.all(slopes >= 1.8)
