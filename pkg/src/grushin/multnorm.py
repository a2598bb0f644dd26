"""Fractional Sobolev norms on the line and the scale-invariant local norm.

The local norm of a multiplier F is the supremum over scales t > 0 of the
W_2^s norm of the windowed rescaling eta * F(t .), with eta a fixed smooth
bump on [1/2, 2].  The supremum is approximated on a dyadic scale grid; a
half-step refinement check quantifies the grid error.  Fractional norms are
computed through Fourier weights (1 + tau^2)^s, which matches the W_2^s
definition exactly and is spectrally accurate for the smooth compactly
supported windowed pieces that arise here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .multipliers import Multiplier, default_window, dyadic_window


@dataclass(frozen=True)
class LocalNormConfig:
    """Configuration for the scale-invariant local Sobolev norm."""

    s: float
    t_grid: np.ndarray
    window: Multiplier = field(default_factory=default_window)
    fourier_resolution: int = 1024
    pad_factor: int = 8

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("s must be nonnegative")
        object.__setattr__(
            self, "t_grid", np.atleast_1d(np.asarray(self.t_grid, dtype=np.float64))
        )
        if self.t_grid.size == 0 or np.any(self.t_grid <= 0):
            raise ValueError("t_grid must contain positive scales")
        lo, hi = self.window.support
        if not (lo > 0 and np.isfinite(hi)):
            raise ValueError("window must be compactly supported inside (0, inf)")

    def validate_covers(self, F: Multiplier) -> None:
        """The scale grid must cover the declared support of F: every part of
        supp F must be reachable by some window [t/2, 2t]."""
        lo, hi = F.support
        wlo, whi = self.window.support
        if not (np.isfinite(lo) and np.isfinite(hi)) or lo <= 0:
            return  # unbounded support: every scale grid samples it
        if self.t_grid.min() * wlo > lo or self.t_grid.max() * whi < hi:
            raise ValueError(
                "t_grid does not cover the declared support of the multiplier"
            )


def sobolev_norm(
    G: Multiplier,
    s: float,
    fourier_resolution: int = 1024,
    pad_factor: int = 8,
) -> float:
    """W_2^s norm of a compactly supported G via the discrete Fourier
    transform of its padded samples.

    The norm is (integral of (1+tau^2)^s |Ghat(tau)|^2 dtau)^(1/2) with the
    unitary transform convention, so s = 0 reproduces the L^2 norm.
    """
    if s < 0:
        raise ValueError("fractional order s must be nonnegative")
    if pad_factor < 8:
        raise ValueError("pad factor below 8 under-resolves the Fourier weight")
    lo, hi = G.support
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise ValueError("sobolev_norm needs a compactly supported multiplier")
    width = hi - lo
    n_supp = max(16, int(math.ceil(width * fourier_resolution)))
    h = width / n_supp
    pts = lo + np.arange(n_supp + 1) * h
    vals = np.asarray(G(pts), dtype=np.complex128)
    # support contract: the closure must vanish just outside [lo, hi]
    probe = np.array([lo - 2e-3 * width, lo - 1e-3 * width, hi + 1e-3 * width, hi + 2e-3 * width])
    G.validate_samples(probe, G(probe))
    total = 1 << max(1, (pad_factor * n_supp - 1)).bit_length()
    padded = np.zeros(total, dtype=np.complex128)
    padded[: vals.size] = vals
    spectrum = np.fft.fft(padded)
    tau = 2.0 * math.pi * np.fft.fftfreq(total, d=h)
    ghat_sq = (h * np.abs(spectrum)) ** 2 / (2.0 * math.pi)
    dtau = 2.0 * math.pi / (total * h)
    return float(np.sqrt(np.sum((1.0 + tau * tau) ** s * ghat_sq) * dtau))


def local_sobolev_norm(F: Multiplier, cfg: LocalNormConfig) -> float:
    """Max over the dyadic scale grid of || eta * F(t .) ||_{W_2^s}."""
    cfg.validate_covers(F)
    eta = cfg.window
    best = 0.0
    for t in cfg.t_grid:
        windowed = Multiplier(
            lambda lam, _t=float(t): np.asarray(eta(lam)) * np.asarray(F(_t * lam)),
            support=eta.support,
            smoothness="smooth",
        )
        best = max(
            best,
            sobolev_norm(
                windowed, cfg.s, cfg.fourier_resolution, cfg.pad_factor
            ),
        )
    return best


def dyadic_pieces(F: Multiplier) -> list:
    """Decompose F against the fixed dyadic partition of unity.

    Returns the pieces F * chi_j whose dyadic bands [2^(j-1), 2^(j+1)] meet
    the declared support of F; the partial sums converge pointwise to F on
    compact subsets of (0, inf).
    """
    lo, hi = F.support
    if lo <= 0 or not np.isfinite(hi):
        raise ValueError("dyadic decomposition needs support inside (0, inf)")
    j_lo = int(math.floor(math.log2(lo)))
    j_hi = int(math.ceil(math.log2(hi)))
    pieces = []
    for j in range(j_lo, j_hi + 1):
        scale = 2.0**j

        def piece(lam, _s=scale):
            lam = np.asarray(lam, dtype=np.float64)
            return np.asarray(F(lam)) * dyadic_window(lam / _s)

        band = (2.0 ** (j - 1), 2.0 ** (j + 1))
        support = (max(band[0], lo), min(band[1], hi))
        if support[0] >= support[1]:
            continue
        pieces.append(Multiplier(piece, support=band, smoothness=F.smoothness))
    return pieces
