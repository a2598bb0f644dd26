"""Discrete diagonalization of the Grushin operator on a box-times-torus grid.

The degenerate block lives on a torus of period P, so its frequencies form
the lattice (2 pi / P) Z^d2 and every oscillatory integral becomes a finite
sum: the discrete model satisfies exact Parseval identities, which turns
the continuum Plancherel statements into machine-precision tests.  The
elliptic block is sampled on a uniform box grid wide enough that every
retained scaled-Hermite mode decays below 1e-8 at the boundary.

For each nonzero lattice frequency xi the scaled Hermite functions

    hmode_n(u, xi) = |xi|^(d1/4) h_{n_1}(|xi|^(1/2) u_1) ...

diagonalize the fibered operators with eigenvalue vector |xi| (2 n + 1),
so applying a multiplier is a pointwise multiplication on coefficients.
The xi = 0 fiber is carried separately: there the operator degenerates to
the plain Laplacian in the elliptic variables, and multipliers act on the
box Fourier modes through F(|eta|^2) (policy "euclidean") or annihilate
the fiber (policy "exclude").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from ._kernels import hermite_columns
from .geometry import Dimensions, Point
from .multipliers import JointMultiplier, Multiplier

# margin, in units of the Hermite decay scale, enforced between a retained
# mode and both the box edge and the grid Nyquist frequency; 6 units push
# the spectral leakage of a resolved mode to about exp(-18)
EDGE_MARGIN = 6.0


@dataclass(frozen=True)
class TorusGrid:
    """Computational domain: box in the elliptic block, torus in the
    degenerate block, with a Hermite layer cutoff."""

    dims: Dimensions
    x1_halfwidth: float
    n1_points: int
    x2_period: float
    n2_points: int
    hermite_cutoff: int

    def __post_init__(self):
        for n in (self.n1_points, self.n2_points):
            if n < 2 or (n & (n - 1)) != 0:
                raise ValueError("grid point counts must be powers of two")
        if self.x1_halfwidth <= 0 or self.x2_period <= 0:
            raise ValueError("domain sizes must be positive")
        if self.hermite_cutoff < self.dims.d1:
            raise ValueError("hermite_cutoff must be at least d1")
        need = math.sqrt(2.0 * self.hermite_cutoff + self.dims.d1) + EDGE_MARGIN
        have = math.sqrt(self.xi_min) * self.x1_halfwidth
        if have < need:
            raise ValueError(
                f"box too small: sqrt(xi_min) * halfwidth = {have:.3f} must be "
                f">= sqrt(2*hermite_cutoff + d1) + {EDGE_MARGIN} = {need:.3f}"
            )

    # --- geometry of the grid -------------------------------------------
    @property
    def xi_min(self) -> float:
        return 2.0 * math.pi / self.x2_period

    @property
    def hx1(self) -> float:
        return 2.0 * self.x1_halfwidth / self.n1_points

    @property
    def hx2(self) -> float:
        return self.x2_period / self.n2_points

    @property
    def x1_shape(self) -> tuple:
        return (self.n1_points,) * self.dims.d1

    @property
    def x2_shape(self) -> tuple:
        return (self.n2_points,) * self.dims.d2

    @property
    def x1_axis(self) -> np.ndarray:
        return -self.x1_halfwidth + self.hx1 * np.arange(self.n1_points)

    @property
    def x2_axis(self) -> np.ndarray:
        return self.hx2 * np.arange(self.n2_points)

    @property
    def cell_volume(self) -> float:
        return self.hx1**self.dims.d1 * self.hx2**self.dims.d2

    def fft_indices(self, n: int) -> np.ndarray:
        k = np.arange(n)
        k[k >= n // 2] -= n
        return k

    def xi_vectors(self) -> np.ndarray:
        """All lattice frequencies, flat (n_xi, d2), in fft raster order."""
        axes = [self.fft_indices(self.n2_points) for _ in range(self.dims.d2)]
        mesh = np.meshgrid(*axes, indexing="ij")
        flat = np.stack([m.reshape(-1) for m in mesh], axis=1).astype(np.float64)
        return flat * self.xi_min

    def eta_vectors(self) -> np.ndarray:
        """Box Fourier frequencies of the zero fiber, flat (n_eta, d1)."""
        axes = [self.fft_indices(self.n1_points) for _ in range(self.dims.d1)]
        mesh = np.meshgrid(*axes, indexing="ij")
        flat = np.stack([m.reshape(-1) for m in mesh], axis=1).astype(np.float64)
        return flat * (math.pi / self.x1_halfwidth)

    def mode_indices(self) -> tuple:
        """Retained Hermite multi-indices, |n|_1 <= (cutoff - d1) // 2."""
        return _mode_indices(self.dims.d1, (self.hermite_cutoff - self.dims.d1) // 2)

    def mode_order_sums(self) -> np.ndarray:
        """2 |n|_1 + d1 for every retained multi-index."""
        return np.array([2 * sum(n) + self.dims.d1 for n in self.mode_indices()])

    # --- resolved spectrum ----------------------------------------------
    def resolved_mask(self) -> np.ndarray:
        """(n_modes, n_xi) flags: mode decays inside the box and oscillates
        below the grid Nyquist frequency, both with the standard margin."""
        modes = self.mode_indices()
        abs_xi = np.linalg.norm(self.xi_vectors(), axis=1)
        nyq = math.pi / self.hx1
        mask = np.zeros((len(modes), abs_xi.size), dtype=bool)
        pos = abs_xi > 0
        root = np.sqrt(abs_xi[pos])
        for i, n in enumerate(modes):
            worst = max(math.sqrt(2 * nj + 1) for nj in n) + EDGE_MARGIN
            ok = (root * self.x1_halfwidth >= worst) & (root * worst <= nyq)
            mask[i, pos] = ok
        return mask

    def resolved_lambda_bounds(self) -> tuple:
        """(lo, hi) of the fully resolved eigenvalue range: every lattice
        eigenvalue below hi belongs to a retained, resolved mode."""
        d1 = self.dims.d1
        w = self.x1_halfwidth
        c_box = self.xi_min * d1 * max(0.0, math.sqrt(self.xi_min) * w - EDGE_MARGIN) ** 2
        c_nyq = d1 * (math.pi / (self.hx1 * (1.0 + EDGE_MARGIN))) ** 2
        c_cut = self.xi_min * self.hermite_cutoff
        c_lattice = d1 * self.xi_min * (self.n2_points // 2)
        return self.xi_min * d1, min(c_box, c_nyq, c_cut, c_lattice)


@lru_cache(maxsize=64)
def _mode_indices(d1: int, max_sum: int) -> tuple:
    out = [n for n in product(range(max_sum + 1), repeat=d1) if sum(n) <= max_sum]
    # ascending layer order, so eigenvalue caps cut a prefix
    out.sort(key=lambda n: (sum(n), n))
    return tuple(out)


@dataclass(frozen=True)
class Field:
    """Complex samples on the product grid."""

    grid: TorusGrid
    samples: np.ndarray

    def __post_init__(self):
        expect = self.grid.x1_shape + self.grid.x2_shape
        if self.samples.shape != expect:
            raise ValueError(f"samples must have shape {expect}")

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2) * self.grid.cell_volume)

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())


@dataclass(frozen=True)
class SpectralCoeffs:
    """Amplitudes on (multi-index, lattice frequency) plus the zero fiber.

    ``amplitudes`` has shape (n_modes, n_xi) with n_xi the flat raster of
    the frequency lattice; the xi = 0 column is identically zero, its
    content lives in ``zero_mode`` (box Fourier coefficients, flat).  The
    normalization makes the energy bookkeeping exact:
    field_norm_sq = sum |amplitudes|^2 + sum |zero_mode|^2 + residual.
    """

    grid: TorusGrid
    amplitudes: np.ndarray
    zero_mode: np.ndarray
    residual: float = 0.0
    notes: tuple = ()

    def __post_init__(self):
        n_modes = len(self.grid.mode_indices())
        n_xi = self.grid.n2_points**self.grid.dims.d2
        n_eta = self.grid.n1_points**self.grid.dims.d1
        if self.amplitudes.shape != (n_modes, n_xi):
            raise ValueError(f"amplitudes must have shape {(n_modes, n_xi)}")
        if self.zero_mode.shape != (n_eta,):
            raise ValueError(f"zero_mode must have shape {(n_eta,)}")

    def norm_sq(self) -> float:
        return float(
            np.sum(np.abs(self.amplitudes) ** 2) + np.sum(np.abs(self.zero_mode) ** 2)
        )


# ---------------------------------------------------------------------------
# scaled Hermite mode tables
# ---------------------------------------------------------------------------


def _axis_columns(grid: TorusGrid, abs_xi: float, max_degree: int) -> np.ndarray:
    """Per-axis table (max_degree+1, n1) of |xi|^(1/4) h_k(|xi|^(1/2) x)."""
    root = math.sqrt(abs_xi)
    cols = np.asarray(hermite_columns(root * grid.x1_axis, max_degree))
    return abs_xi**0.25 * cols


def _mode_matrix(grid: TorusGrid, abs_xi: float, n_keep: int | None = None) -> np.ndarray:
    """(n_keep, n1^d1) values of the first n_keep retained modes at every
    grid point (modes are in ascending layer order)."""
    modes = grid.mode_indices()
    if n_keep is None:
        n_keep = len(modes)
    modes = modes[:n_keep]
    max_deg = max(max(n) for n in modes)
    d1 = grid.dims.d1
    if d1 == 1:
        return _axis_columns(grid, abs_xi, max_deg)
    cols = _axis_columns(grid, abs_xi, max_deg)
    out = np.empty((len(modes), grid.n1_points**d1))
    for i, n in enumerate(modes):
        block = cols[n[0]]
        for nj in n[1:]:
            block = np.multiply.outer(block, cols[nj])
        out[i] = block.reshape(-1)
    return out


def _mode_values_at(grid: TorusGrid, abs_xi: float, y1: np.ndarray, n_keep: int) -> np.ndarray:
    """Values of the first n_keep retained modes at one elliptic point."""
    modes = grid.mode_indices()[:n_keep]
    max_deg = max(max(n) for n in modes)
    root = math.sqrt(abs_xi)
    per_axis = np.asarray(hermite_columns(root * np.asarray(y1, dtype=np.float64), max_deg))
    out = np.empty(len(modes))
    scale = abs_xi ** (grid.dims.d1 / 4.0)
    for i, n in enumerate(modes):
        v = scale
        for j, nj in enumerate(n):
            v *= per_axis[nj, j]
        out[i] = v
    return out


def _xi_groups(grid: TorusGrid):
    """Unique |xi| values with their flat column indices, zero excluded."""
    abs_xi = np.linalg.norm(grid.xi_vectors(), axis=1)
    uniq, inverse = np.unique(abs_xi, return_inverse=True)
    for u, val in enumerate(uniq):
        if val == 0.0:
            continue
        yield float(val), np.nonzero(inverse == u)[0]


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------


def _x2_axes(grid: TorusGrid) -> tuple:
    d1, d2 = grid.dims.d1, grid.dims.d2
    return tuple(range(d1, d1 + d2))


def _eta_phase(grid: TorusGrid) -> np.ndarray:
    """Per-frequency factor exp(i eta W) = (-1)^k relating the DFT over the
    shifted box axis to the absolute Fourier basis exp(i eta x1)."""
    k = grid.fft_indices(grid.n1_points)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    mesh = np.meshgrid(*([sign] * grid.dims.d1), indexing="ij")
    out = np.ones(grid.n1_points**grid.dims.d1)
    for m in mesh:
        out = out * m.reshape(-1)
    return out


def _x1_axes(grid: TorusGrid) -> tuple:
    return tuple(range(grid.dims.d1))


def analyze(f: Field) -> SpectralCoeffs:
    """Fourier series in the degenerate block, then quadrature projection of
    each nonzero-frequency fiber onto the scaled Hermite modes; the zero
    fiber is projected onto box Fourier modes.  The residual records the
    energy outside the retained band (high residual is reported, not fatal).
    """
    grid = f.grid
    d1, d2 = grid.dims.d1, grid.dims.d2
    n_x1 = grid.n1_points**d1
    n_xi = grid.n2_points**d2
    series = np.fft.fftn(f.samples, axes=_x2_axes(grid)) / n_xi
    psi = grid.x2_period ** (d2 / 2.0) * series.reshape(n_x1, n_xi)
    modes = grid.mode_indices()
    amps = np.zeros((len(modes), n_xi), dtype=np.complex128)
    quad = grid.hx1**d1
    for abs_xi, cols in _xi_groups(grid):
        T = _mode_matrix(grid, abs_xi)
        amps[:, cols] = quad * (T @ psi[:, cols])
    zero_col = int(np.nonzero(np.all(grid.xi_vectors() == 0.0, axis=1))[0][0])
    psi0 = psi[:, zero_col].reshape(grid.x1_shape)
    zero = (
        (2.0 * grid.x1_halfwidth) ** (d1 / 2.0)
        * _eta_phase(grid)
        * np.fft.fftn(psi0, axes=tuple(range(d1))).reshape(-1)
        / n_x1
    )
    residual = f.norm_sq() - float(
        np.sum(np.abs(amps) ** 2) + np.sum(np.abs(zero) ** 2)
    )
    return SpectralCoeffs(grid=grid, amplitudes=amps, zero_mode=zero, residual=residual)


def synthesize(c: SpectralCoeffs) -> Field:
    """Right inverse of analyze on the retained band: evaluates every mode
    pointwise and resums the frequency series."""
    grid = c.grid
    d1, d2 = grid.dims.d1, grid.dims.d2
    n_x1 = grid.n1_points**d1
    n_xi = grid.n2_points**d2
    psi = np.zeros((n_x1, n_xi), dtype=np.complex128)
    for abs_xi, cols in _xi_groups(grid):
        block = c.amplitudes[:, cols]
        used = np.nonzero(np.any(block != 0, axis=1))[0]
        if used.size == 0:
            continue
        n_keep = int(used[-1]) + 1
        T = _mode_matrix(grid, abs_xi, n_keep)
        psi[:, cols] = T.T @ block[:n_keep]
    zero_col = int(np.nonzero(np.all(grid.xi_vectors() == 0.0, axis=1))[0][0])
    z = (c.zero_mode * _eta_phase(grid)).reshape(grid.x1_shape)
    psi0 = n_x1 * (2.0 * grid.x1_halfwidth) ** (-d1 / 2.0) * np.fft.ifftn(
        z, axes=tuple(range(d1))
    )
    psi[:, zero_col] = psi0.reshape(-1)
    series = grid.x2_period ** (-d2 / 2.0) * psi
    shaped = series.reshape(grid.x1_shape + grid.x2_shape)
    samples = np.fft.ifftn(shaped, axes=_x2_axes(grid)) * n_xi
    return Field(grid=grid, samples=samples)


# ---------------------------------------------------------------------------
# multiplier action
# ---------------------------------------------------------------------------


def eigenvalue(n, xi) -> np.ndarray:
    """Eigenvalue vector (|xi| (2 n_j + 1))_j; its sum over j is the
    eigenvalue of the full operator, |xi| (2 |n|_1 + d1)."""
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    s = float(np.linalg.norm(xi))
    if s == 0.0:
        raise ValueError("eigenvalue undefined at xi = 0")
    n = np.atleast_1d(np.asarray(n, dtype=np.int64))
    return s * (2.0 * n + 1.0)


def _lambda_table(grid: TorusGrid) -> np.ndarray:
    """(n_modes, n_xi) eigenvalues |xi| (2 |n|_1 + d1); zero at xi = 0."""
    abs_xi = np.linalg.norm(grid.xi_vectors(), axis=1)
    return np.multiply.outer(grid.mode_order_sums().astype(np.float64), abs_xi)


def apply_L(F: Multiplier, c: SpectralCoeffs, zero_mode_policy: str = "euclidean") -> SpectralCoeffs:
    """Multiplier action on the full operator: amplitude (n, xi) picks up
    F(|xi| (2 |n|_1 + d1)); the zero fiber picks up F(|eta|^2) under the
    euclidean policy (the operator restricts to the plain Laplacian there)
    or is zeroed under the exclude policy."""
    _check_policy(zero_mode_policy)
    grid = c.grid
    lam = _lambda_table(grid)
    abs_xi = np.linalg.norm(grid.xi_vectors(), axis=1)
    factors = np.zeros(lam.shape, dtype=np.complex128)
    pos = abs_xi > 0
    factors[:, pos] = np.asarray(F(lam[:, pos]), dtype=np.complex128)
    amps = c.amplitudes * factors
    if zero_mode_policy == "euclidean":
        eta_sq = np.sum(c.grid.eta_vectors() ** 2, axis=1)
        zero = c.zero_mode * np.asarray(F(eta_sq), dtype=np.complex128)
    else:
        zero = np.zeros_like(c.zero_mode)
    return SpectralCoeffs(
        grid=grid, amplitudes=amps, zero_mode=zero, residual=c.residual, notes=c.notes
    )


def apply_joint(G: JointMultiplier, c: SpectralCoeffs) -> SpectralCoeffs:
    """Joint multiplier action: amplitude (n, xi) picks up the scalar
    G(|xi| (2 n + 1), xi).  G vanishes outside its declared frequency
    annulus, which must avoid xi = 0; the zero fiber is left untouched and
    the result is flagged when it carries energy."""
    grid = c.grid
    xi_vecs = grid.xi_vectors()
    abs_xi = np.linalg.norm(xi_vecs, axis=1)
    lo, hi = G.xi_support
    modes = grid.mode_indices()
    amps = np.zeros_like(c.amplitudes)
    inside = (abs_xi >= lo) & (abs_xi <= hi)
    for col in np.nonzero(inside)[0]:
        xi = xi_vecs[col]
        s = abs_xi[col]
        for i, n in enumerate(modes):
            if c.amplitudes[i, col] == 0:
                continue
            lam_vec = s * (2.0 * np.asarray(n, dtype=np.float64) + 1.0)
            amps[i, col] = c.amplitudes[i, col] * G(lam_vec, xi)
    notes = c.notes
    if float(np.max(np.abs(c.zero_mode), initial=0.0)) > 0.0:
        notes = notes + ("zero_mode untouched by joint multiplier",)
    return SpectralCoeffs(
        grid=grid, amplitudes=amps, zero_mode=c.zero_mode.copy(), residual=c.residual, notes=notes
    )


def apply_P_power(gamma: float, f: Field) -> Field:
    """Pointwise multiplication by |x1|^gamma (gamma = 0 is the identity)."""
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    grid = f.grid
    d1 = grid.dims.d1
    axes = np.meshgrid(*([grid.x1_axis] * d1), indexing="ij")
    norm = np.sqrt(sum(a * a for a in axes))
    if gamma == 0:
        factor = np.ones_like(norm)
    else:
        factor = norm**gamma
    shape = factor.shape + (1,) * grid.dims.d2
    return Field(grid=grid, samples=f.samples * factor.reshape(shape))


def apply_T_power(sigma: float, c: SpectralCoeffs) -> SpectralCoeffs:
    """Power of the degenerate-block frequency norm: amplitude (n, xi)
    picks up |xi|^sigma.  Negative powers require an empty zero fiber."""
    abs_xi = np.linalg.norm(c.grid.xi_vectors(), axis=1)
    if sigma < 0:
        if float(np.max(np.abs(c.zero_mode), initial=0.0)) > 0.0:
            raise ValueError("negative frequency power undefined on the zero fiber")
        zero = np.zeros_like(c.zero_mode)
    elif sigma > 0:
        zero = np.zeros_like(c.zero_mode)
    else:
        zero = c.zero_mode.copy()
    factors = np.zeros_like(abs_xi)
    pos = abs_xi > 0
    factors[pos] = abs_xi[pos] ** sigma
    return SpectralCoeffs(
        grid=c.grid,
        amplitudes=c.amplitudes * factors[None, :],
        zero_mode=zero,
        residual=c.residual,
        notes=c.notes,
    )


def _check_policy(policy: str) -> None:
    if policy not in ("euclidean", "exclude"):
        raise ValueError("zero_mode_policy must be 'euclidean' or 'exclude'")


# ---------------------------------------------------------------------------
# kernel columns
# ---------------------------------------------------------------------------


def kernel_column_coeffs(
    F: Multiplier,
    y: Point,
    grid: TorusGrid,
    zero_mode_policy: str = "euclidean",
    lambda_max: float | None = None,
) -> SpectralCoeffs:
    """Coefficients of the kernel column of F applied to the operator,
    centered at y: amplitude (n, xi) equals

        P^(-d2/2) F(|xi| (2|n|+d1)) hmode_n(y1, xi) exp(-i <xi, y2>).

    ``lambda_max`` truncates modes with eigenvalue beyond it (used for
    multipliers without compact support; the dropped weight is the
    caller's truncation diagnostic).
    """
    _check_policy(zero_mode_policy)
    d1, d2 = grid.dims.d1, grid.dims.d2
    if np.max(np.abs(np.asarray(y.x1))) > grid.x1_halfwidth:
        raise ValueError("base point outside the grid box")
    cap = lambda_max
    lo_sup, hi_sup = F.support
    if np.isfinite(hi_sup):
        cap = hi_sup if cap is None else min(cap, hi_sup)
    modes = grid.mode_indices()
    order = grid.mode_order_sums()
    n_xi = grid.n2_points**d2
    amps = np.zeros((len(modes), n_xi), dtype=np.complex128)
    xi_vecs = grid.xi_vectors()
    pnorm = grid.x2_period ** (-d2 / 2.0)
    for abs_xi, cols in _xi_groups(grid):
        lam = abs_xi * order.astype(np.float64)
        if cap is not None:
            n_keep = int(np.searchsorted(lam, cap, side="right"))
            if n_keep == 0:
                continue
        else:
            n_keep = len(modes)
        fvals = np.asarray(F(lam[:n_keep]), dtype=np.complex128)
        F.validate_samples(lam[:n_keep], fvals)
        hy = _mode_values_at(grid, abs_xi, y.x1, n_keep)
        phases = np.exp(-1j * (xi_vecs[cols] @ np.asarray(y.x2, dtype=np.float64)))
        amps[:n_keep, cols] = pnorm * (fvals * hy)[:, None] * phases[None, :]
    if zero_mode_policy == "euclidean":
        etas = grid.eta_vectors()
        eta_sq = np.sum(etas * etas, axis=1)
        zero = (
            pnorm
            * (2.0 * grid.x1_halfwidth) ** (-d1 / 2.0)
            * np.asarray(F(eta_sq), dtype=np.complex128)
            * np.exp(-1j * (etas @ np.asarray(y.x1, dtype=np.float64)))
        )
    else:
        zero = np.zeros(grid.n1_points**d1, dtype=np.complex128)
    return SpectralCoeffs(grid=grid, amplitudes=amps, zero_mode=zero)


def kernel_column(
    F: Multiplier,
    y: Point,
    grid: TorusGrid,
    zero_mode_policy: str = "euclidean",
    lambda_max: float | None = None,
) -> Field:
    """The periodized kernel column as a field over the grid."""
    return synthesize(
        kernel_column_coeffs(F, y, grid, zero_mode_policy, lambda_max)
    )


def kernel_diagonal(
    F: Multiplier,
    y: Point,
    grid: TorusGrid,
    zero_mode_policy: str = "euclidean",
    lambda_max: float | None = None,
) -> float:
    """Value of the kernel column at its own center, evaluated by direct
    summation of the retained spectral series (no field synthesis, hence no
    grid-resolution requirement beyond the retained-set coverage)."""
    _check_policy(zero_mode_policy)
    d1, d2 = grid.dims.d1, grid.dims.d2
    order = grid.mode_order_sums()
    cap = lambda_max
    lo_sup, hi_sup = F.support
    if np.isfinite(hi_sup):
        cap = hi_sup if cap is None else min(cap, hi_sup)
    total = 0.0
    inv_p = grid.x2_period ** (-float(d2))
    for abs_xi, cols in _xi_groups(grid):
        lam = abs_xi * order.astype(np.float64)
        n_keep = len(order) if cap is None else int(np.searchsorted(lam, cap, side="right"))
        if n_keep == 0:
            continue
        fvals = np.asarray(F(lam[:n_keep]), dtype=np.float64)
        hy = _mode_values_at(grid, abs_xi, y.x1, n_keep)
        total += len(cols) * inv_p * float(np.sum(fvals * hy * hy))
    if zero_mode_policy == "euclidean":
        eta_sq = np.sum(grid.eta_vectors() ** 2, axis=1)
        total += inv_p * (2.0 * grid.x1_halfwidth) ** (-float(d1)) * float(
            np.sum(np.asarray(F(eta_sq), dtype=np.float64))
        )
    return total


# ---------------------------------------------------------------------------
# band-limited test fields
# ---------------------------------------------------------------------------


def random_band_limited(
    grid: TorusGrid,
    rng: np.random.Generator,
    include_zero_mode: bool = True,
    eta_fraction: float = 0.25,
) -> SpectralCoeffs:
    """Random unit-norm coefficients supported on the resolved band."""
    mask = grid.resolved_mask()
    amps = np.zeros(mask.shape, dtype=np.complex128)
    k = int(mask.sum())
    if k:
        amps[mask] = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    n_eta = grid.n1_points**grid.dims.d1
    zero = np.zeros(n_eta, dtype=np.complex128)
    if include_zero_mode:
        eta_norm = np.linalg.norm(grid.eta_vectors(), axis=1)
        sel = eta_norm <= eta_fraction * math.pi / grid.hx1
        zero[sel] = rng.standard_normal(int(sel.sum())) + 1j * rng.standard_normal(
            int(sel.sum())
        )
    total = math.sqrt(float(np.sum(np.abs(amps) ** 2) + np.sum(np.abs(zero) ** 2)))
    if total == 0:
        raise ValueError("grid has an empty resolved band")
    return SpectralCoeffs(grid=grid, amplitudes=amps / total, zero_mode=zero / total)
