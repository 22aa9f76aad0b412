"""Command-line interface.

Exit codes: 0 success, 1 invalid configuration, 2 numerical
non-convergence, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass, fields
from typing import List, Optional, Sequence

import numpy as np

from . import coulomb, delta, verify
from .constants import ELECTRON_MASS, HBAR, HYDROGEN_Z_E2, SI_DEFAULT_MU
from .exceptions import (
    AsymptoticRegimeWarning,
    EigenFailure,
    GridTooCoarse,
    NoConvergence,
    StepUnderflow,
)
from .kernel import ModelParams, minimal_length
from .numerics import Tolerance
from .numerics.roots import ROOT_TOL

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3
MIN_GRID = 50
CURVE_SAMPLES = 501
CURVE_HALF_WIDTH = 20.0  # in units of the largest minimal length hbar / min(mu)

DELTA_COLUMNS = ("mu", "p0_exact", "e_exact", "e_asymptotic", "rel_gap", "min_length")
COULOMB_COLUMNS = (
    "n", "mu", "discriminant", "bound_state", "p0_minus", "p0_plus", "e_minus_exact", "e_plus_exact",
    "e_minus_printed_expansion", "e_minus_derived_expansion", "min_length_bound",
)
CURVE_COLUMNS = ("x", "v_eff", "mu")

NATURAL_DEFAULTS = {"hbar": 1.0, "mass": 1.0, "mu": 10.0, "kappa": 1.0, "z_e2": 1.0}
SI_DEFAULTS = {"hbar": HBAR, "mass": ELECTRON_MASS, "mu": SI_DEFAULT_MU, "kappa": HYDROGEN_Z_E2, "z_e2": HYDROGEN_Z_E2}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    units: str = "natural"
    hbar: float = 1.0
    mass: float = 1.0
    mu: float = 10.0
    kappa: float = 1.0
    z_e2: float = 1.0
    n_max: int = 1
    grid_size: int = 400
    output_format: str = "csv"
    output_path: Optional[str] = None
    tol: Optional[float] = None

    def __post_init__(self):
        if self.units not in ("natural", "si"):
            raise ConfigError(f"units: expected 'natural' or 'si', got {self.units!r}")
        for name in ("hbar", "mass", "mu", "kappa", "z_e2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{name}: must be a finite positive number, got {value!r}")
        if self.n_max < 1:
            raise ConfigError(f"n_max: must be a positive integer, got {self.n_max!r}")
        if self.grid_size < MIN_GRID:
            raise ConfigError(f"grid_size: must be at least {MIN_GRID}, got {self.grid_size!r}")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"format: expected 'csv' or 'json', got {self.output_format!r}")
        if self.tol is not None and not (0 < self.tol < 1):
            raise ConfigError(f"tol: must lie in (0, 1), got {self.tol!r}")

    def params(self, mu: Optional[float] = None) -> ModelParams:
        return ModelParams(hbar=self.hbar, mass=self.mass, mu=self.mu if mu is None else mu)

    def root_tol(self) -> Tolerance:
        if self.tol is None:
            return ROOT_TOL
        return Tolerance(abs_tol=ROOT_TOL.abs_tol, rel_tol=max(self.tol, ROOT_TOL.rel_tol), max_iter=ROOT_TOL.max_iter)


# -- formatting ------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".16e")


def _csv(columns: Sequence[str], rows: List[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def _json(payload: dict) -> str:
    return json.dumps({"schema_version": verify.SCHEMA_VERSION, **payload}, indent=2, allow_nan=False) + "\n"


def _emit(text: str, config: RunConfig) -> None:
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finite_or_none(v):
    return None if v is None or not math.isfinite(v) else v


# -- commands ---------------------------------------------------------------------

def delta_rows(config: RunConfig, mu_list: Sequence[float]) -> List[dict]:
    coupling = delta.DeltaCoupling(config.kappa)
    rows = []
    for mu in mu_list:
        params = config.params(mu)
        state = delta.solve_bound_state(params, coupling, config.root_tol())
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", AsymptoticRegimeWarning)
            e_asym = delta.energy_asymptotic(params, coupling)
        if delta.coupling_ratio(params, coupling) >= 1.0:
            print(f"warning: mu={mu:g} is outside the large-mu regime; e_asymptotic is unreliable",
                  file=sys.stderr)
        rows.append({
            "mu": mu,
            "p0_exact": state.p0,
            "e_exact": state.energy,
            "e_asymptotic": e_asym,
            "rel_gap": abs(state.energy - e_asym) / abs(state.energy),
            "min_length": minimal_length(params),
        })
    return rows


def cmd_delta_spectrum(config: RunConfig, mu_list: Sequence[float]) -> int:
    rows = delta_rows(config, mu_list)
    if config.output_format == "csv":
        _emit(_csv(DELTA_COLUMNS, rows), config)
    else:
        _emit(_json({"command": "delta-spectrum", "units": config.units, "kappa": config.kappa, "rows": rows}), config)
    return EXIT_OK


def coulomb_rows(config: RunConfig, mu_list: Sequence[float]) -> List[dict]:
    rows = []
    for mu in mu_list:
        params = config.params(mu)
        for n in range(1, config.n_max + 1):
            c = coulomb.CoulombCoupling(config.z_e2, n)
            spectrum = coulomb.spectral_roots(params, c)
            rep = coulomb.expansion_report(params, c)
            rows.append({
                "n": n,
                "mu": mu,
                "discriminant": spectrum.discriminant,
                "bound_state": spectrum.has_bound_state,
                "p0_minus": spectrum.p0_minus,
                "p0_plus": spectrum.p0_plus,
                "e_minus_exact": spectrum.e_minus,
                "e_plus_exact": spectrum.e_plus,
                "e_minus_printed_expansion": _finite_or_none(rep["e_minus_printed_expansion"]) if spectrum.has_bound_state else None,
                "e_minus_derived_expansion": _finite_or_none(rep["e_minus_derived_expansion"]) if spectrum.has_bound_state else None,
                "min_length_bound": coulomb.min_length_bound(n, params, c),
            })
            if not spectrum.has_bound_state:
                print(f"note: n={n}, mu={mu:g}: discriminant {spectrum.discriminant:.6g} < 0, no bound state",
                      file=sys.stderr)
    return rows


def cmd_coulomb_spectrum(config: RunConfig, mu_list: Sequence[float]) -> int:
    rows = coulomb_rows(config, mu_list)
    if config.output_format == "csv":
        _emit(_csv(COULOMB_COLUMNS, rows), config)
    else:
        branches = {"minus": "physical branch, finite classical limit", "plus": "large-mu divergent branch"}
        _emit(_json({"command": "coulomb-spectrum", "units": config.units, "z_e2": config.z_e2,
                     "branches": branches, "rows": rows}), config)
    return EXIT_OK


def curve_rows(config: RunConfig, which: str, mu_list: Sequence[float], half_width: Optional[float] = None):
    if half_width is None:
        half_width = CURVE_HALF_WIDTH * config.hbar / min(mu_list)
    # mirrored construction keeps the grid exactly symmetric about x = 0
    half = CURVE_SAMPLES // 2
    pos = half_width * np.arange(1, half + 1) / half
    x = np.concatenate([-pos[::-1], [0.0], pos])
    curves = []
    for mu in mu_list:
        params = config.params(mu)
        if which == "delta":
            v = delta.v_eff_position(x, params, delta.DeltaCoupling(config.kappa))
        else:
            v = coulomb.v_eff_position(x, params, coulomb.CoulombCoupling(config.z_e2))
        curves.append((mu, x, np.asarray(v)))
    return curves


def cmd_effective_potential(config: RunConfig, which: str, mu_list: Sequence[float],
                            half_width: Optional[float] = None) -> int:
    if not mu_list:
        raise ConfigError("mu-list: at least one value is required")
    curves = curve_rows(config, which, mu_list, half_width)
    if config.output_format == "csv":
        rows = [{"x": xi, "v_eff": vi, "mu": mu} for mu, x, v in curves for xi, vi in zip(x, v)]
        _emit(_csv(CURVE_COLUMNS, rows), config)
    else:
        payload = {
            "command": "effective-potential",
            "which": which,
            "units": config.units,
            "curves": [{"mu": mu, "x": x.tolist(), "v_eff": v.tolist()} for mu, x, v in curves],
        }
        _emit(_json(payload), config)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    def progress(check):
        print(f"{check.status.upper():4s}  {check.name}", file=sys.stderr)

    report = verify.run_suite(config.grid_size, progress=progress)
    data = report.to_dict()
    if config.output_format == "json":
        _emit(json.dumps(data, indent=2) + "\n", config)
    else:
        rows = [{"name": c["name"], "status": c["status"], "criterion": c["criterion"] or "",
                 "measured": json.dumps(c["measured"]), "threshold": json.dumps(c["threshold"])}
                for c in data["checks"]]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["name", "status", "criterion", "measured", "threshold"],
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), config)
    return EXIT_OK if report.passed else EXIT_VERIFY


# -- argument parsing -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with the configuration-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--units", choices=("natural", "si"), default="natural")
    p.add_argument("--hbar", type=float)
    p.add_argument("--mass", type=float)
    p.add_argument("--mu", type=float, help="deformation scale; the minimal length is hbar/mu")
    p.add_argument("--mu-list", type=str, help="comma-separated list of mu values")
    p.add_argument("--kappa", type=float, help="delta-well strength")
    p.add_argument("--ze2", type=float, dest="z_e2", help="Coulomb strength Z e^2")
    p.add_argument("--n-max", type=int, default=1)
    p.add_argument("--grid-size", type=int, default=400)
    p.add_argument("--format", choices=("csv", "json"), default="csv", dest="output_format")
    p.add_argument("--out", dest="output_path")
    p.add_argument("--tol", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gupbound", description="Bound states and effective potentials with a minimal length.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_text in (
        ("delta-spectrum", "delta-well bound state: exact root vs large-mu formula"),
        ("coulomb-spectrum", "Coulomb levels on both branches with expansions and the length bound"),
        ("effective-potential", "sample the regularized potentials on a symmetric x grid"),
        ("verify", "run the verification suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        _common(p)
        if name == "effective-potential":
            p.add_argument("--which", choices=("delta", "coulomb"), default="delta")
            p.add_argument("--x-range", type=float, dest="x_range",
                           help="half-width of the x grid (default: 20 hbar / min(mu))")
    return parser


def _parse_mu_list(text: str) -> List[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"mu-list: {exc}") from None
    if not values:
        raise ConfigError("mu-list: at least one value is required")
    for v in values:
        if not (math.isfinite(v) and v > 0):
            raise ConfigError(f"mu-list: every mu must be a finite positive number, got {v!r}")
    return values


def config_from_args(args: argparse.Namespace) -> RunConfig:
    defaults = SI_DEFAULTS if args.units == "si" else NATURAL_DEFAULTS
    values = {}
    for name in ("hbar", "mass", "mu", "kappa", "z_e2"):
        given = getattr(args, name)
        values[name] = defaults[name] if given is None else given
    known = {f.name for f in fields(RunConfig)}
    extra = {k: getattr(args, k) for k in ("n_max", "grid_size", "output_format", "output_path", "tol") if k in known}
    return RunConfig(units=args.units, **values, **extra)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        mu_list = _parse_mu_list(args.mu_list) if args.mu_list else [config.mu]
        if args.command == "delta-spectrum":
            return cmd_delta_spectrum(config, mu_list)
        if args.command == "coulomb-spectrum":
            return cmd_coulomb_spectrum(config, mu_list)
        if args.command == "effective-potential":
            if args.x_range is not None and not (math.isfinite(args.x_range) and args.x_range > 0):
                raise ConfigError(f"x-range: must be a finite positive number, got {args.x_range!r}")
            return cmd_effective_potential(config, args.which, mu_list, args.x_range)
        return cmd_verify(config)
    except ConfigError as exc:
        print(f"gupbound: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NoConvergence, StepUnderflow, EigenFailure, GridTooCoarse) as exc:
        print(f"gupbound: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"gupbound: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
