"""Spectral multiplier containers and smooth window constructions.

A Multiplier bundles an evaluation closure F with its declared support and
a smoothness tag; the declared support is a contract that downstream code
verifies against the numerically sampled support.  JointMultiplier is the
two-argument analogue G(lambda_vec, xi_vec) for the joint calculus, with a
declared annulus of frequency support that must avoid xi = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Multiplier:
    """A spectral multiplier F with declared support [lo, hi]."""

    fn: callable
    support: tuple
    smoothness: str = "smooth"

    def __post_init__(self):
        lo, hi = self.support
        if not lo < hi:
            raise ValueError("support interval must be nondegenerate")

    def __call__(self, lam):
        return np.asarray(self.fn(np.asarray(lam, dtype=np.float64)))

    def validate_samples(self, lam, values, tol: float = 1e-12) -> None:
        """Declared support must contain the numerically sampled support."""
        lam = np.asarray(lam)
        values = np.asarray(values)
        lo, hi = self.support
        outside = (lam < lo) | (lam > hi)
        if not outside.any():
            return
        scale = 1.0 + float(np.max(np.abs(values)))
        worst = float(np.max(np.abs(values[outside])))
        if worst > tol * scale:
            raise ValueError(
                f"multiplier is nonzero ({worst:.3e}) outside its declared "
                f"support [{lo}, {hi}]"
            )


@dataclass(frozen=True)
class JointMultiplier:
    """A joint multiplier G(lambda_vec, xi_vec) with frequency support
    in the annulus xi_support (which must avoid xi = 0)."""

    fn: callable
    xi_support: tuple
    smoothness: str = "smooth"

    def __post_init__(self):
        lo, hi = self.xi_support
        if lo <= 0:
            raise ValueError("joint multiplier support must avoid xi = 0")
        if not lo < hi:
            raise ValueError("xi support annulus must be nondegenerate")

    def __call__(self, lam_vec, xi_vec):
        return complex(self.fn(np.asarray(lam_vec), np.asarray(xi_vec)))


def smooth_step(x):
    """C-infinity step: 0 for x <= 0, 1 for x >= 1, strictly rising between."""
    x = np.asarray(x, dtype=np.float64)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        a = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        b = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return a / (a + b)


def dyadic_window(lam):
    """The fixed Littlewood-Paley window: supported on [1/2, 2], positive on
    (1/2, 2), with sum_j window(2^-j lam) = 1 for lam > 0."""
    lam = np.asarray(lam, dtype=np.float64)
    out = np.zeros_like(lam)
    pos = lam > 0
    ell = np.log2(lam[pos])
    out[pos] = smooth_step(ell + 1.0) - smooth_step(ell)
    return out


def default_window() -> Multiplier:
    """The auxiliary window used by the scale-invariant local norm."""
    return Multiplier(dyadic_window, support=(0.5, 2.0), smoothness="smooth")


def exp_bump(lo: float, hi: float) -> Multiplier:
    """Classic smooth bump exp(-1/((x-lo)(hi-x))) normalized to peak 1."""
    if not 0 <= lo < hi:
        raise ValueError("need 0 <= lo < hi")
    width = hi - lo
    peak = math.exp(-1.0 / (width / 2.0) ** 2)

    def fn(lam):
        lam = np.asarray(lam, dtype=np.float64)
        inside = (lam > lo) & (lam < hi)
        out = np.zeros_like(lam)
        t = (lam[inside] - lo) * (hi - lam[inside])
        out[inside] = np.exp(-1.0 / t) / peak
        return out

    return Multiplier(fn, support=(lo, hi), smoothness="smooth")


def bochner_riesz(t: float, kappa: float) -> Multiplier:
    """The smoothed spectral cutoff (1 - t lam)_+^kappa."""
    if t <= 0:
        raise ValueError("t must be positive")
    if kappa < 0:
        raise ValueError("kappa must be nonnegative")

    def fn(lam):
        base = np.maximum(0.0, 1.0 - t * np.asarray(lam, dtype=np.float64))
        return base**kappa if kappa > 0 else (base > 0).astype(np.float64)

    tag = "smooth" if kappa > 0 else "indicator"
    return Multiplier(fn, support=(-np.inf, 1.0 / t), smoothness=tag)


def heat(t: float) -> Multiplier:
    """exp(-t lam); unbounded support, decays past lam ~ 1/t."""
    if t <= 0:
        raise ValueError("t must be positive")
    return Multiplier(
        lambda lam: np.exp(-t * np.asarray(lam, dtype=np.float64)),
        support=(-np.inf, np.inf),
        smoothness="smooth",
    )


def imaginary_power(t: float) -> Multiplier:
    """lam^(i t) on lam > 0, extended by 0 to lam <= 0."""

    def fn(lam):
        lam = np.asarray(lam, dtype=np.float64)
        out = np.zeros(lam.shape, dtype=np.complex128)
        pos = lam > 0
        out[pos] = np.exp(1j * t * np.log(lam[pos]))
        return out

    return Multiplier(fn, support=(0.0, np.inf), smoothness="bounded")
