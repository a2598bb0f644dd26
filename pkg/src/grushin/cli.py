"""Batch experiment runner.

Usage:
    grushin run <config-file> [--seed N] [--out DIR] [--gnuplot]
    grushin list

Configs are flat INI files with sections [experiment], [dims], [grid] and
[params]; list-valued parameters are comma separated.  Outputs per run: a
CSV report (one row per sweep point, every row carrying its full parameter
tuple) and a JSON-lines manifest with grid parameters, the seed, truncation
diagnostics and resolved-spectrum bounds.  Identical (config, seed) pairs
produce byte-identical outputs.

Exit codes: 0 success, 2 config error, 3 numeric failure (NaN/Inf cells).
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from pathlib import Path

import numpy as np

from . import estimates, hermite
from .geometry import (
    Dimensions,
    Point,
    ball_volume_formula,
    ball_volume_mc,
    volume_bound_integral,
)
from .report import EstimateReport
from .spectral import TorusGrid

__version__ = "0.1.0"


class ConfigError(Exception):
    pass


class NumericFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------


def _floats(raw: str):
    return [float(tok) for tok in raw.replace(";", ",").split(",") if tok.strip()]


def _load_config(path: Path) -> dict:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    if "experiment" not in parser or "name" not in parser["experiment"]:
        raise ConfigError("config must carry [experiment] name = <identifier>")
    cfg = {
        "name": parser["experiment"]["name"].strip(),
        "seed": int(parser["experiment"].get("seed", "0")),
        "dims": None,
        "grid": None,
        "params": {},
    }
    if "dims" in parser:
        cfg["dims"] = Dimensions(
            int(parser["dims"].get("d1", "1")), int(parser["dims"].get("d2", "1"))
        )
    if "grid" in parser:
        g = parser["grid"]
        try:
            cfg["grid"] = {
                "x1_halfwidth": float(g["x1_halfwidth"]),
                "n1_points": int(g["n1_points"]),
                "x2_period": float(g["x2_period"]),
                "n2_points": int(g["n2_points"]),
                "hermite_cutoff": int(g["hermite_cutoff"]),
            }
        except KeyError as exc:
            raise ConfigError(f"grid section is missing {exc}") from exc
    if "params" in parser:
        cfg["params"] = {k: v for k, v in parser["params"].items()}
    return cfg


def _build_grid(cfg: dict) -> TorusGrid:
    if cfg["grid"] is None:
        raise ConfigError("this experiment needs a [grid] section")
    dims = cfg["dims"] or Dimensions(1, 1)
    try:
        return TorusGrid(dims=dims, **cfg["grid"])
    except ValueError as exc:
        raise ConfigError(f"invalid grid: {exc}") from exc


def _param(cfg: dict, key: str, default=None):
    if key in cfg["params"]:
        return cfg["params"][key]
    if default is not None:
        return default
    raise ConfigError(f"missing required parameter '{key}'")


def _points(values, dims: Dimensions):
    return [
        Point([v] + [0.0] * (dims.d1 - 1), [0.0] * dims.d2) for v in values
    ]


# ---------------------------------------------------------------------------
# experiment registry
# ---------------------------------------------------------------------------


def _run_lemma_sum(cfg):
    d = int(_param(cfg, "d"))
    eps = float(_param(cfg, "eps"))
    n_max = int(_param(cfg, "n_max"))
    us = _floats(_param(cfg, "u_grid"))
    if eps <= 0:
        raise ConfigError("eps must be positive")
    return hermite.lemma_sum_sweep(d, eps, us, n_max)


def _run_muckenhoupt(cfg):
    n_max = int(_param(cfg, "n_max"))
    us = _floats(_param(cfg, "u_grid"))
    c = float(_param(cfg, "exp_constant", "0.1"))
    return hermite.muckenhoupt_constant(n_max, np.asarray(us), c)


def _run_higher_layer(cfg):
    d = int(_param(cfg, "d"))
    if d < 2:
        raise ConfigError("d must be >= 2 (use muckenhoupt_constant for d = 1)")
    n_max = int(_param(cfg, "n_max"))
    us = _floats(_param(cfg, "u_grid"))
    ax = np.asarray(us)
    pts = np.zeros((ax.size, d))
    pts[:, 0] = ax
    c = float(_param(cfg, "exp_constant", "0.1"))
    return hermite.higher_layer_constant(d, n_max, pts, c)


def _run_ball_volume_mc(cfg):
    dims = cfg["dims"] or Dimensions(1, 1)
    x1 = _floats(_param(cfg, "x1_norms"))
    rs = _floats(_param(cfg, "r_grid"))
    samples = int(_param(cfg, "samples", "20000"))
    report = EstimateReport(name="ball_volume_mc")
    for xn in x1:
        for r in rs:
            pt = Point([xn] + [0.0] * (dims.d1 - 1), [0.0] * dims.d2)
            est, err = ball_volume_mc(pt, r, samples, seed=cfg["seed"])
            formula = ball_volume_formula(pt, r)
            report.add(
                {"x1": xn, "r": r},
                {"estimate": est, "stderr": err, "formula": formula,
                 "ratio": est / formula if formula > 0 else np.nan},
            )
    return report


def _run_volume_bound(cfg):
    dims = cfg["dims"] or Dimensions(1, 1)
    gamma = float(_param(cfg, "gamma"))
    beta = float(_param(cfg, "beta"))
    rs = _floats(_param(cfg, "R_grid"))
    y1 = float(_param(cfg, "y1", "1.0"))
    if not 0 <= gamma < min(dims.d1, dims.d2) / 2:
        raise ConfigError("gamma must lie in [0, min(d1, d2)/2)")
    report = EstimateReport(name="volume_bound_integral")
    for R in rs:
        y = Point([y1] + [0.0] * (dims.d1 - 1), [0.0] * dims.d2)
        ratio, proxy = volume_bound_integral(R, y, gamma, beta)
        report.add({"R": R, "gamma": gamma, "beta": beta}, {"ratio": ratio, "truncation": proxy})
    vals = report.column("ratio")
    report.summary = {"variation": float(vals.max() / vals.min())}
    return report


def _run_fractional(cfg):
    grid = _build_grid(cfg)
    gamma = float(_param(cfg, "gamma"))
    trials = int(_param(cfg, "trials", "200"))
    return estimates.fractional_ratio(gamma, trials, grid, cfg["seed"])


def _run_rough_weighted(cfg):
    grid = _build_grid(cfg)
    gamma = float(_param(cfg, "gamma"))
    R = float(_param(cfg, "R", "1.0"))
    ys = _points(_floats(_param(cfg, "y1_grid")), grid.dims)
    return estimates.rough_weighted_check(estimates.bump_on_window(R), gamma, ys, grid)


def _check_wp_gamma(cfg, gamma: float) -> bool:
    dims = cfg["dims"] or Dimensions(1, 1)
    exploratory = _param(cfg, "exploratory", "false").lower() == "true"
    if not exploratory and not 0 <= gamma < dims.d2 / 2:
        raise ConfigError(
            f"gamma = {gamma} violates the hypothesis gamma in [0, d2/2[ "
            f"(d2 = {dims.d2}); set exploratory = true to probe the failure regime"
        )
    return exploratory


def _run_weighted_plancherel(cfg):
    grid = _build_grid(cfg)
    gamma = float(_param(cfg, "gamma"))
    exploratory = _check_wp_gamma(cfg, gamma)
    rs = _floats(_param(cfg, "R_grid", "1.0"))
    yn = _floats(_param(cfg, "y1_grid"))
    return estimates.weighted_plancherel_sweep(gamma, rs, grid, yn, exploratory=exploratory)


def _run_weighted_l2_full(cfg):
    grid = _build_grid(cfg)
    gamma = float(_param(cfg, "gamma"))
    _check_wp_gamma(cfg, gamma)
    alpha = float(_param(cfg, "alpha"))
    beta = float(_param(cfg, "beta"))
    R = float(_param(cfg, "R", "1.0"))
    ys = _points(_floats(_param(cfg, "y1_grid")), grid.dims)
    return estimates.weighted_l2_full_check(
        estimates.bump_on_window(R), alpha, beta, gamma, R, ys, grid
    )


def _run_offball(cfg):
    grid = _build_grid(cfg)
    alpha = float(_param(cfg, "alpha"))
    beta = float(_param(cfg, "beta"))
    R = float(_param(cfg, "R", "1.0"))
    y1 = float(_param(cfg, "y1", "1.0"))
    rs = _floats(_param(cfg, "r_grid"))
    y = Point([y1] + [0.0] * (grid.dims.d1 - 1), [0.0] * grid.dims.d2)
    report = EstimateReport(name="offball_l1")
    F = estimates.bump_on_window(R)
    for r in rs:
        ratio = estimates.offball_l1(F, alpha, beta, r, R, y, grid)
        report.add({"r": r, "alpha": alpha, "beta": beta, "R": R}, {"ratio": ratio})
    return report


def _run_gaussian(cfg):
    grid = _build_grid(cfg)
    ts = _floats(_param(cfg, "t_grid"))
    ys = _points(_floats(_param(cfg, "y1_grid")), grid.dims)
    return estimates.gaussian_bound_check(ts, ys, grid)


def _run_heat_diagonal(cfg):
    grid = _build_grid(cfg)
    ts = _floats(_param(cfg, "t_grid"))
    yn = _floats(_param(cfg, "y1_grid"))
    return estimates.heat_diagonal_sweep(yn, ts, grid)


def _run_imaginary_power(cfg):
    s = float(_param(cfg, "s"))
    ts = _floats(_param(cfg, "t_grid"))
    if s <= 0:
        raise ConfigError("s must be positive")
    return estimates.imaginary_power_mw_growth(s, ts)


def _run_bochner_riesz(cfg):
    grid = _build_grid(cfg)
    kappa = float(_param(cfg, "kappa"))
    exploratory = _param(cfg, "exploratory", "false").lower() == "true"
    if kappa <= 0 and not exploratory:
        raise ConfigError("kappa must be positive (kappa = 0 only with exploratory = true)")
    ts = _floats(_param(cfg, "t_grid"))
    ys = _points(_floats(_param(cfg, "y1_grid")), grid.dims)
    return estimates.bochner_riesz_sup(kappa, ts, ys, grid, exploratory=exploratory)


EXPERIMENTS = {
    "lemma_sum": (
        _run_lemma_sum,
        "partial sums of the Hermite layer-decay series with tail bounds",
        "d, eps, n_max, u_grid",
    ),
    "muckenhoupt_constant": (
        _run_muckenhoupt,
        "empirical constant in the pointwise squared-Hermite bound",
        "n_max, u_grid [, exp_constant]",
    ),
    "higher_layer_constant": (
        _run_higher_layer,
        "empirical constant in the layer-sum bound for d >= 2",
        "d, n_max, u_grid [, exp_constant]",
    ),
    "ball_volume_mc": (
        _run_ball_volume_mc,
        "Monte Carlo volume of surrogate-distance balls against the closed form",
        "x1_norms, r_grid [, samples]",
    ),
    "volume_bound_integral": (
        _run_volume_bound,
        "weighted off-diagonal volume integral, scale uniformity",
        "gamma, beta, R_grid [, y1]",
    ),
    "fractional_ratio": (
        _run_fractional,
        "empirical constant in the fractional-power comparison on random fields",
        "gamma [, trials] + [grid]",
    ),
    "rough_weighted_check": (
        _run_rough_weighted,
        "weighted kernel energy against its layer-sum majorant",
        "gamma, y1_grid [, R] + [grid]",
    ),
    "weighted_plancherel_ratio": (
        _run_weighted_plancherel,
        "scale-normalized weighted Plancherel ratio across dilated grids",
        "gamma, y1_grid [, R_grid, exploratory] + [grid]",
    ),
    "weighted_l2_full_check": (
        _run_weighted_l2_full,
        "doubly weighted kernel energy against the fractional Sobolev norm",
        "alpha, beta, gamma, y1_grid [, R] + [grid]",
    ),
    "offball_l1": (
        _run_offball,
        "off-ball L1 kernel mass against its decay budget",
        "alpha, beta, r_grid [, R, y1] + [grid]",
    ),
    "gaussian_bound_check": (
        _run_gaussian,
        "Gaussian upper-bound fit for the heat kernel",
        "t_grid, y1_grid + [grid]",
    ),
    "heat_diagonal_limit": (
        _run_heat_diagonal,
        "small-time diagonal asymptotic of the heat kernel at elliptic points",
        "t_grid, y1_grid + [grid]",
    ),
    "imaginary_power_mw_growth": (
        _run_imaginary_power,
        "growth exponent of the local Sobolev norm of imaginary powers",
        "s, t_grid",
    ),
    "bochner_riesz_sup": (
        _run_bochner_riesz,
        "uniformity of the L1 kernel norms of the smoothed spectral cutoffs",
        "kappa, t_grid, y1_grid [, exploratory] + [grid]",
    ),
}


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------


def _write_outputs(report: EstimateReport, cfg: dict, out_dir: Path, gnuplot: bool):
    out_dir.mkdir(parents=True, exist_ok=True)
    bad = report.nonfinite_cells()
    if bad:
        row, col = bad[0]
        raise NumericFailure(
            f"non-finite value in report '{report.name}' at row {row}, column '{col}'"
        )
    csv_path = out_dir / f"{cfg['name']}.csv"
    report.to_csv(csv_path)
    manifest = {
        "experiment": cfg["name"],
        "report": report.name,
        "seed": cfg["seed"],
        "dims": None
        if cfg["dims"] is None
        else {"d1": cfg["dims"].d1, "d2": cfg["dims"].d2},
        "grid": cfg["grid"],
        "params": cfg["params"],
        "summary": _jsonable(report.summary),
        "fit": report.fit,
        "truncation": _jsonable(report.truncation),
        "version": __version__,
    }
    if cfg["grid"] is not None:
        grid = _build_grid(cfg)
        manifest["resolved_spectrum"] = list(grid.resolved_lambda_bounds())
    with open(out_dir / "manifest.jsonl", "a", newline="\n") as fh:
        fh.write(json.dumps(manifest, sort_keys=True) + "\n")
    if gnuplot:
        _write_gnuplot(report, out_dir / f"{cfg['name']}.dat")
    return csv_path


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return float(obj)
    return obj


def _write_gnuplot(report: EstimateReport, path: Path) -> None:
    cols = report.header()
    lines = ["# " + " ".join(cols)]
    npar = len(report.params_grid[0]) if report.params_grid else 0
    for pars, vals in zip(report.params_grid, report.values):
        row = [str(pars[k]) for k in cols[:npar]] + [str(vals[k]) for k in cols[npar:]]
        lines.append(" ".join(row))
    path.write_text("\n".join(lines) + "\n")


def run(config_path: str, seed: int | None = None, out: str | None = None, gnuplot: bool = False) -> int:
    try:
        cfg = _load_config(Path(config_path))
        if seed is not None:
            cfg["seed"] = seed
        name = cfg["name"]
        if name not in EXPERIMENTS:
            raise ConfigError(
                f"unknown experiment '{name}'; run `grushin list` for the catalog"
            )
        runner, _, _ = EXPERIMENTS[name]
        report = runner(cfg)
        out_dir = Path(out) if out else Path.cwd()
        csv_path = _write_outputs(report, cfg, out_dir, gnuplot)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {csv_path}")
    return 0


def list_experiments() -> int:
    print(f"{len(EXPERIMENTS)} experiments registered:")
    for name, (_, description, params) in EXPERIMENTS.items():
        print(f"  {name}")
        print(f"      {description}")
        print(f"      parameters: {params}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="grushin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run one experiment from a config file")
    runp.add_argument("config")
    runp.add_argument("--seed", type=int, default=None)
    runp.add_argument("--out", default=None)
    runp.add_argument("--gnuplot", action="store_true")
    sub.add_parser("list", help="print the experiment catalog")
    args = parser.parse_args(argv)
    if args.command == "list":
        return list_experiments()
    return run(args.config, seed=args.seed, out=args.out, gnuplot=args.gnuplot)


if __name__ == "__main__":
    sys.exit(main())
