"""Flat binary serialization for fields and spectral coefficients.

Layout (all little endian): an 8-byte magic tag, a uint32 format version,
five int64 values (d1, d2, n1_points, n2_points, hermite_cutoff), two
float64 values (x1_halfwidth, x2_period), then the payload as interleaved
re/im float64 pairs in row-major order.  A text sidecar `<path>.meta.txt`
records the grid metadata for humans.
"""

from __future__ import annotations

import struct

import numpy as np

from .geometry import Dimensions
from .spectral import Field, SpectralCoeffs, TorusGrid

_FIELD_MAGIC = b"GRUFLD\x00\x00"
_COEFF_MAGIC = b"GRUCOF\x00\x00"
_VERSION = 1


def _write_header(fh, magic: bytes, grid: TorusGrid) -> None:
    fh.write(magic)
    fh.write(struct.pack("<I", _VERSION))
    fh.write(
        struct.pack(
            "<5q",
            grid.dims.d1,
            grid.dims.d2,
            grid.n1_points,
            grid.n2_points,
            grid.hermite_cutoff,
        )
    )
    fh.write(struct.pack("<2d", grid.x1_halfwidth, grid.x2_period))


def _read_header(fh, magic: bytes) -> TorusGrid:
    tag = fh.read(8)
    if tag != magic:
        raise ValueError(f"bad magic {tag!r}, expected {magic!r}")
    (version,) = struct.unpack("<I", fh.read(4))
    if version != _VERSION:
        raise ValueError(f"unsupported format version {version}")
    d1, d2, n1, n2, cutoff = struct.unpack("<5q", fh.read(40))
    halfwidth, period = struct.unpack("<2d", fh.read(16))
    return TorusGrid(
        dims=Dimensions(d1, d2),
        x1_halfwidth=halfwidth,
        n1_points=n1,
        x2_period=period,
        n2_points=n2,
        hermite_cutoff=cutoff,
    )


def _write_complex(fh, data: np.ndarray) -> None:
    flat = np.ascontiguousarray(data, dtype=np.complex128).reshape(-1)
    inter = np.empty(2 * flat.size, dtype="<f8")
    inter[0::2] = flat.real
    inter[1::2] = flat.imag
    fh.write(inter.tobytes())


def _read_complex(fh, count: int) -> np.ndarray:
    raw = np.frombuffer(fh.read(16 * count), dtype="<f8")
    return raw[0::2] + 1j * raw[1::2]


def _write_sidecar(path, grid: TorusGrid, kind: str) -> None:
    lines = [
        f"kind={kind}",
        f"version={_VERSION}",
        f"d1={grid.dims.d1}",
        f"d2={grid.dims.d2}",
        f"n1_points={grid.n1_points}",
        f"n2_points={grid.n2_points}",
        f"hermite_cutoff={grid.hermite_cutoff}",
        f"x1_halfwidth={grid.x1_halfwidth!r}",
        f"x2_period={grid.x2_period!r}",
    ]
    with open(str(path) + ".meta.txt", "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def save_field(path, f: Field) -> None:
    with open(path, "wb") as fh:
        _write_header(fh, _FIELD_MAGIC, f.grid)
        _write_complex(fh, f.samples)
    _write_sidecar(path, f.grid, "field")


def load_field(path) -> Field:
    with open(path, "rb") as fh:
        grid = _read_header(fh, _FIELD_MAGIC)
        shape = grid.x1_shape + grid.x2_shape
        samples = _read_complex(fh, int(np.prod(shape))).reshape(shape)
    return Field(grid=grid, samples=samples)


def save_coeffs(path, c: SpectralCoeffs) -> None:
    with open(path, "wb") as fh:
        _write_header(fh, _COEFF_MAGIC, c.grid)
        fh.write(struct.pack("<d", c.residual))
        _write_complex(fh, c.amplitudes)
        _write_complex(fh, c.zero_mode)
    _write_sidecar(path, c.grid, "coeffs")


def load_coeffs(path) -> SpectralCoeffs:
    with open(path, "rb") as fh:
        grid = _read_header(fh, _COEFF_MAGIC)
        (residual,) = struct.unpack("<d", fh.read(8))
        n_modes = len(grid.mode_indices())
        n_xi = grid.n2_points**grid.dims.d2
        n_eta = grid.n1_points**grid.dims.d1
        amps = _read_complex(fh, n_modes * n_xi).reshape(n_modes, n_xi)
        zero = _read_complex(fh, n_eta)
    return SpectralCoeffs(grid=grid, amplitudes=amps, zero_mode=zero, residual=residual)
