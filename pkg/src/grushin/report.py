"""Estimate reports: parameter sweeps, measured values, fits, CSV output."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class EstimateReport:
    """Result of one verification experiment.

    ``params_grid`` and ``values`` are parallel lists of dicts, one entry per
    sweep point; every CSV row therefore carries its full parameter tuple.
    ``fit`` holds (constant, exponent, residual) from a log-log regression
    when one was performed, ``truncation`` collects discretization and
    truncation-error proxies, and ``summary`` the headline scalars.
    """

    name: str
    params_grid: list = field(default_factory=list)
    values: list = field(default_factory=list)
    fit: tuple | None = None
    truncation: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.params_grid) != len(self.values):
            raise ValueError("params_grid and values must have equal length")

    def add(self, params: dict, values: dict) -> None:
        self.params_grid.append(dict(params))
        self.values.append(dict(values))

    def column(self, key: str) -> np.ndarray:
        """One measured quantity across the sweep, as an array."""
        return np.array([v[key] for v in self.values], dtype=np.float64)

    def param_column(self, key: str) -> np.ndarray:
        return np.array([p[key] for p in self.params_grid], dtype=np.float64)

    def header(self) -> list:
        pkeys = list(self.params_grid[0]) if self.params_grid else []
        vkeys = list(self.values[0]) if self.values else []
        return pkeys + vkeys

    def to_csv(self, path) -> None:
        """One row per sweep point; floats via repr for byte determinism."""
        cols = self.header()
        npar = len(self.params_grid[0]) if self.params_grid else 0
        lines = [",".join(cols)]
        for pars, vals in zip(self.params_grid, self.values):
            row = [_fmt(pars[k]) for k in cols[:npar]]
            row += [_fmt(vals[k]) for k in cols[npar:]]
            lines.append(",".join(row))
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")

    def nonfinite_cells(self) -> list:
        """(row, column) coordinates of every NaN or Inf value cell."""
        bad = []
        for i, vals in enumerate(self.values):
            for key, val in vals.items():
                if isinstance(val, (int, float, np.floating)) and not np.isfinite(val):
                    bad.append((i, key))
        return bad


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def loglog_fit(x, y):
    """Least-squares power-law fit y ~ C x^p.

    Returns (C, p, residual) where residual is the RMS misfit of log(y).
    """
    lx = np.log(np.asarray(x, dtype=np.float64))
    ly = np.log(np.asarray(y, dtype=np.float64))
    coeffs, res = np.polynomial.polynomial.polyfit(lx, ly, 1, full=True)
    intercept, slope = coeffs
    rms = float(np.sqrt(res[0][0] / lx.size)) if len(res[0]) else 0.0
    return float(np.exp(intercept)), float(slope), rms
