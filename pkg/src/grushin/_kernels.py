"""Hot numeric kernels: Hermite recurrences and layer-sum sweeps.

Every kernel exists twice, as a pure-numpy implementation and as a numba
njit twin; :mod:`grushin._accel` decides which set is exported under the
plain names.  The numpy versions vectorize over the evaluation points, the
numba versions run scalar loops (parallel over points).

All Hermite evaluations use the orthonormal three-term recurrence

    h_0(t) = pi^(-1/4) exp(-t^2/2),  h_1(t) = sqrt(2) t h_0(t),
    h_{k+1}(t) = sqrt(2/(k+1)) t h_k(t) - sqrt(k/(k+1)) h_{k-1}(t),

carried in a scaled representation (mantissa plus a power-of-two exponent)
so that the seed exp(-t^2/2) never underflows the iteration.  This keeps
the recurrence usable to degree 10^4 and beyond, far past where a direct
Rodrigues evaluation overflows.
"""

import math

import numpy as np

from ._accel import HAS_NUMBA

_LOG2E = math.log2(math.e)
_LOG2_PI = math.log2(math.pi)
# mantissas are renormalized once they pass 2^500; values of the orthonormal
# Hermite functions themselves never exceed 0.816 so only growth from a tiny
# seed toward the classically allowed region needs rescaling
_BIG = 2.0**500
_SHRINK = 2.0**-500


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _seed_log2(points: np.ndarray) -> np.ndarray:
    return -(points * points) * (0.5 * _LOG2E) - 0.25 * _LOG2_PI


def hermite_columns_numpy(points: np.ndarray, max_degree: int) -> np.ndarray:
    """Table of orthonormal Hermite functions, entry (k, i) = h_k(points[i])."""
    pts = np.atleast_1d(np.asarray(points, dtype=np.float64))
    out = np.empty((max_degree + 1, pts.size))
    l0 = _seed_log2(pts)
    expo = np.floor(l0).astype(np.int64)
    y = np.exp2(l0 - expo)
    ym1 = np.zeros_like(y)
    np.clip(expo, -2_000_000, 2_000_000, out=expo)
    out[0] = np.ldexp(y, expo.astype(np.int32))
    for k in range(max_degree):
        c1 = math.sqrt(2.0 / (k + 1))
        c2 = math.sqrt(k / (k + 1.0))
        ynew = c1 * pts * y - c2 * ym1
        ym1, y = y, ynew
        big = np.abs(y) > _BIG
        if big.any():
            y = np.where(big, y * _SHRINK, y)
            ym1 = np.where(big, ym1 * _SHRINK, ym1)
            expo = expo + np.where(big, 500, 0)
        out[k + 1] = np.ldexp(y, expo.astype(np.int32))
    return out


def _hermite_single_degree_numpy(points: np.ndarray, degree: int) -> np.ndarray:
    """h_degree evaluated at an array of points, without storing lower rows."""
    pts = np.asarray(points, dtype=np.float64)
    l0 = _seed_log2(pts)
    expo = np.floor(l0).astype(np.int64)
    y = np.exp2(l0 - expo)
    ym1 = np.zeros_like(y)
    for k in range(degree):
        c1 = math.sqrt(2.0 / (k + 1))
        c2 = math.sqrt(k / (k + 1.0))
        ynew = c1 * pts * y - c2 * ym1
        ym1, y = y, ynew
        big = np.abs(y) > _BIG
        if big.any():
            y = np.where(big, y * _SHRINK, y)
            ym1 = np.where(big, ym1 * _SHRINK, ym1)
            expo = expo + np.where(big, 500, 0)
    np.clip(expo, -2_000_000, 2_000_000, out=expo)
    return np.ldexp(y, expo.astype(np.int32))


def lemma_sweep_d1_numpy(u_abs: np.ndarray, eps: float, n_layer_max: int) -> np.ndarray:
    """Partial sums over odd layers N <= n_layer_max of

        max(1,u)^eps * N^(-1/2-eps) * h_{(N-1)/2}(u/sqrt(N))^2

    evaluated for every u in ``u_abs`` at once.
    """
    us = np.asarray(u_abs, dtype=np.float64)
    pref = np.maximum(1.0, us) ** eps
    acc = np.zeros_like(us)
    for layer in range(1, n_layer_max + 1, 2):
        v = us / math.sqrt(layer)
        h = _hermite_single_degree_numpy(v, (layer - 1) // 2)
        acc += float(layer) ** (-0.5 - eps) * h * h
    return pref * acc


def lemma_sweep_d2_numpy(
    u1: np.ndarray, u2: np.ndarray, u_norm: np.ndarray, eps: float, n_layer_max: int
) -> np.ndarray:
    """Same partial sums for d = 2, layers N even, H_{2,N} by coordinate
    contraction (identical term set as the multi-index enumeration)."""
    a1 = np.asarray(u1, dtype=np.float64)
    a2 = np.asarray(u2, dtype=np.float64)
    pref = np.maximum(1.0, np.asarray(u_norm, dtype=np.float64)) ** eps
    acc = np.zeros_like(a1)
    for layer in range(2, n_layer_max + 1, 2):
        m = (layer - 2) // 2
        s = math.sqrt(layer)
        t1 = hermite_columns_numpy(a1 / s, m)
        t2 = hermite_columns_numpy(a2 / s, m)
        hsum = np.einsum("km,km->m", t1 * t1, (t2 * t2)[::-1])
        acc += float(layer) ** (-1.0 - eps) * hsum
    return pref * acc


_NUMPY_KERNELS = {
    "hermite_columns": hermite_columns_numpy,
    "lemma_sweep_d1": lemma_sweep_d1_numpy,
    "lemma_sweep_d2": lemma_sweep_d2_numpy,
}


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAS_NUMBA:
    from numba import njit, prange

    @njit(cache=True)
    def _hermite_scalar_nb(degree, t):
        l0 = -(t * t) * (0.5 * _LOG2E) - 0.25 * _LOG2_PI
        expo = int(math.floor(l0))
        if expo < -2_000_000:
            expo = -2_000_000
        y = 2.0 ** (l0 - expo)
        ym1 = 0.0
        for k in range(degree):
            c1 = math.sqrt(2.0 / (k + 1))
            c2 = math.sqrt(k / (k + 1.0))
            ynew = c1 * t * y - c2 * ym1
            ym1 = y
            y = ynew
            if abs(y) > _BIG:
                y *= _SHRINK
                ym1 *= _SHRINK
                expo += 500
        if expo < -1100:
            return 0.0
        return math.ldexp(y, expo)

    @njit(cache=True, parallel=True)
    def hermite_columns_numba(points, max_degree):
        pts = np.asarray(points)
        out = np.empty((max_degree + 1, pts.size))
        for i in prange(pts.size):
            t = pts[i]
            l0 = -(t * t) * (0.5 * _LOG2E) - 0.25 * _LOG2_PI
            expo = int(math.floor(l0))
            if expo < -2_000_000:
                expo = -2_000_000
            y = 2.0 ** (l0 - expo)
            ym1 = 0.0
            out[0, i] = 0.0 if expo < -1100 else math.ldexp(y, expo)
            for k in range(max_degree):
                c1 = math.sqrt(2.0 / (k + 1))
                c2 = math.sqrt(k / (k + 1.0))
                ynew = c1 * t * y - c2 * ym1
                ym1 = y
                y = ynew
                if abs(y) > _BIG:
                    y *= _SHRINK
                    ym1 *= _SHRINK
                    expo += 500
                out[k + 1, i] = 0.0 if expo < -1100 else math.ldexp(y, expo)
        return out

    @njit(cache=True, parallel=True)
    def lemma_sweep_d1_numba(u_abs, eps, n_layer_max):
        out = np.zeros(u_abs.size)
        for i in prange(u_abs.size):
            u = u_abs[i]
            pref = max(1.0, u) ** eps
            acc = 0.0
            for layer in range(1, n_layer_max + 1, 2):
                v = u / math.sqrt(layer)
                h = _hermite_scalar_nb((layer - 1) // 2, v)
                acc += float(layer) ** (-0.5 - eps) * h * h
            out[i] = pref * acc
        return out

    @njit(cache=True, parallel=True)
    def lemma_sweep_d2_numba(u1, u2, u_norm, eps, n_layer_max):
        out = np.zeros(u1.size)
        max_m = (n_layer_max - 2) // 2
        for i in prange(u1.size):
            pref = max(1.0, u_norm[i]) ** eps
            h1 = np.empty(max_m + 1)
            h2 = np.empty(max_m + 1)
            acc = 0.0
            for layer in range(2, n_layer_max + 1, 2):
                m = (layer - 2) // 2
                s = math.sqrt(layer)
                v1 = u1[i] / s
                v2 = u2[i] / s
                _fill_squares_nb(h1, m, v1)
                _fill_squares_nb(h2, m, v2)
                hsum = 0.0
                for k in range(m + 1):
                    hsum += h1[k] * h2[m - k]
                acc += float(layer) ** (-1.0 - eps) * hsum
            out[i] = pref * acc
        return out

    @njit(cache=True)
    def _fill_squares_nb(buf, m, t):
        l0 = -(t * t) * (0.5 * _LOG2E) - 0.25 * _LOG2_PI
        expo = int(math.floor(l0))
        if expo < -2_000_000:
            expo = -2_000_000
        y = 2.0 ** (l0 - expo)
        ym1 = 0.0
        val = 0.0 if expo < -1100 else math.ldexp(y, expo)
        buf[0] = val * val
        for k in range(m):
            c1 = math.sqrt(2.0 / (k + 1))
            c2 = math.sqrt(k / (k + 1.0))
            ynew = c1 * t * y - c2 * ym1
            ym1 = y
            y = ynew
            if abs(y) > _BIG:
                y *= _SHRINK
                ym1 *= _SHRINK
                expo += 500
            val = 0.0 if expo < -1100 else math.ldexp(y, expo)
            buf[k + 1] = val * val

    _NUMBA_KERNELS = {
        "hermite_columns": hermite_columns_numba,
        "lemma_sweep_d1": lemma_sweep_d1_numba,
        "lemma_sweep_d2": lemma_sweep_d2_numba,
    }
else:  # pragma: no cover - exercised via GRUSHIN_BACKEND=numpy runs
    hermite_columns_numba = None
    lemma_sweep_d1_numba = None
    lemma_sweep_d2_numba = None
    _NUMBA_KERNELS = None


_ACTIVE = _NUMBA_KERNELS if HAS_NUMBA else _NUMPY_KERNELS

hermite_columns = _ACTIVE["hermite_columns"]
lemma_sweep_d1 = _ACTIVE["lemma_sweep_d1"]
lemma_sweep_d2 = _ACTIVE["lemma_sweep_d2"]
