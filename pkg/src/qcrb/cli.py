"""Command-line interface: ``qcrb <subcommand> ...``.

Exit codes: 0 ok, 2 bad configuration, 3 cutoff too small, 4 verification
failure, 5 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import boundary_samples, l0_grid, region_from_bundle
from .closed_forms import ScenarioKey, closed_fisher
from .figures import csv_text, region_curves, chempot_rows, write_figure
from .fock import FockCutoff, PhysicalConstants, all_operators, dump_operator
from .states import (
    CutoffTooSmall,
    NonPhysicalBranch,
    ThermalParams,
    solve_chemical_potential,
    thermal_params_from,
    thermal_params_from_mu,
)
from .verify import DEFAULT_TOLERANCE, numeric_fisher, relative_errors, run_oracle_suite

EXIT_OK, EXIT_CONFIG, EXIT_CUTOFF, EXIT_VERIFY, EXIT_IO = 0, 2, 3, 4, 5

_CONFIG_KEYS = ("generators", "state", "eB", "beta_omega", "L0", "mu", "cutoff")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    generators: str = "canonical"
    state: str = "pure"
    eB: float = 2.0
    beta_omega: float | None = None
    L0: float | None = None
    mu: float | None = None
    cutoff: FockCutoff | None = None

    def __post_init__(self):
        if self.generators not in ("canonical", "mechanical"):
            raise ConfigError(f"generators must be canonical or mechanical, got {self.generators!r}")
        if self.state not in ("pure", "thermal"):
            raise ConfigError(f"state must be pure or thermal, got {self.state!r}")
        if not (isinstance(self.eB, (int, float)) and self.eB > 0 and math.isfinite(self.eB)):
            raise ConfigError(f"eB must be positive, got {self.eB!r}")
        thermal_fields = (self.beta_omega, self.L0, self.mu)
        if self.state == "pure":
            if any(v is not None for v in thermal_fields):
                raise ConfigError("pure state takes no beta_omega, L0 or mu")
            return
        if self.beta_omega is None:
            raise ConfigError("thermal state needs beta_omega")
        if (self.L0 is None) == (self.mu is None):
            raise ConfigError("thermal state needs exactly one of L0 and mu")

    @property
    def key(self) -> ScenarioKey:
        return ScenarioKey(self.generators, self.state)

    @property
    def constants(self) -> PhysicalConstants:
        return PhysicalConstants(float(self.eB))

    def thermal_params(self) -> ThermalParams | None:
        if self.state == "pure":
            return None
        try:
            if self.L0 is not None:
                return thermal_params_from(float(self.L0), float(self.beta_omega))
            return thermal_params_from_mu(float(self.mu), float(self.beta_omega))
        except (ValueError, NonPhysicalBranch) as exc:
            raise ConfigError(str(exc)) from exc


def parse_cutoff(text) -> FockCutoff:
    if isinstance(text, FockCutoff):
        return text
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = [p for p in str(text).replace("x", ",").split(",") if p.strip()]
    try:
        values = [int(p) for p in parts]
        if len(values) == 1:
            values *= 2
        return FockCutoff(*values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad cutoff {text!r}: {exc}") from exc


def _load_config(args) -> ScenarioConfig:
    merged = {}
    if getattr(args, "config", None):
        try:
            raw = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        unknown = set(raw) - set(_CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        merged.update(raw)
    for name in _CONFIG_KEYS:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    if merged.get("cutoff") is not None:
        merged["cutoff"] = parse_cutoff(merged["cutoff"])
    return ScenarioConfig(**merged)


def _pairs(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def bundle_json(bundle, lam_sq: float) -> dict:
    mats = bundle.matrices()
    out = {name: _pairs(m) for name, m in mats.items()}
    out["d_invariant"] = bool(bundle.d_invariant)
    out["ordering_case"] = bundle.ordering_case.value
    out["generalized_rld"] = bool(bundle.generalized_rld)
    out["lam_sq_units"] = {name: _pairs(m) for name, m in bundle.scaled(lam_sq).items()}
    return out


def cmd_fisher(args) -> int:
    cfg = _load_config(args)
    constants, params = cfg.constants, cfg.thermal_params()
    bundle = closed_fisher(cfg.key, constants, params)
    doc = {"scenario": cfg.key.name, "eB": constants.eB, "lam_sq": constants.lam_sq}
    if params is not None:
        doc["params"] = {
            "beta_omega": params.beta_omega,
            "mu": params.mu,
            "L0": params.L0,
            "kappa_a_sq": params.kappa_a_sq,
            "kappa_b_sq": params.kappa_b_sq,
        }
    doc.update(bundle_json(bundle, constants.lam_sq))
    code = EXIT_OK
    if args.verify:
        numeric, cutoff = numeric_fisher(cfg.key, constants, params, cutoff=cfg.cutoff)
        errs = relative_errors(numeric, bundle)
        doc["cutoff"] = [cutoff.n_a, cutoff.n_b]
        doc["max_rel_err"] = errs
        doc["tolerance"] = args.tolerance
        if max(errs.values()) > args.tolerance:
            code = EXIT_VERIFY
    print(json.dumps(doc, indent=2))
    return code


def _parse_sweep(text: str):
    """``"BW1,BW2,...:START:STOP:STEP"``."""
    try:
        temps, start, stop, step = text.split(":")
        bws = [float(v) for v in temps.split(",") if v.strip()]
        grid = l0_grid(float(start), float(stop), float(step))
    except ValueError as exc:
        raise ConfigError(f"bad sweep {text!r}; expected BW,...:START:STOP:STEP") from exc
    if not bws:
        raise ConfigError("sweep needs at least one beta_omega")
    return bws, grid


def cmd_chempot(args) -> int:
    try:
        if args.sweep is not None:
            bws, grid = _parse_sweep(args.sweep)
            rows = chempot_rows(bws, grid)
            sys.stdout.write(
                csv_text(["beta_omega", "L0", "mu"], [[f"{v:.12g}" for v in r] for r in rows])
            )
            return EXIT_OK
        if args.beta_omega is None or args.L0 is None:
            raise ConfigError("chempot needs --beta-omega and --L0, or --sweep")
        print(float(f"{solve_chemical_potential(args.L0, args.beta_omega):.15g}"))
    except (ValueError, NonPhysicalBranch) as exc:
        raise ConfigError(str(exc)) from exc
    return EXIT_OK


def cmd_region(args) -> int:
    cfg = _load_config(args)
    constants = cfg.constants
    region = region_from_bundle(closed_fisher(cfg.key, constants, cfg.thermal_params()))
    if not args.raw_units:
        region = region.scaled(1 / constants.lam_sq)
    if args.v11_max is None:
        v_max = 2.0 * max(region.sld.g11, region.sld.g22)
        if region.intersections:
            v_max = max(v_max, 1.5 * max(max(p) for p in region.intersections))
    else:
        v_max = args.v11_max
    try:
        boundary_samples(region, v_max, args.samples)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = []
    for curve, kind, pts in region_curves("region", region, v_max, args.samples):
        rows.extend((curve, kind, f"{a:.12g}", f"{b:.12g}") for a, b in pts)
    text = csv_text(["curve", "kind", "v11", "v22"], rows)
    summary = {
        "sld": [region.sld.g11, region.sld.g22],
        "rld": None
        if region.rld is None
        else [region.rld.g11, region.rld.g22, region.rld.im_g12, region.rld.kind.value],
        "intersections": region.intersections,
        "delta_v_rs": region.delta_v_rs,
    }
    if args.output:
        _write(Path(args.output), text)
        print(json.dumps(summary))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_figure(args) -> int:
    constants = PhysicalConstants(args.eB)
    paths = write_figure(
        args.number, args.output_dir, constants, raw_units=args.raw_units, svg=not args.no_svg
    )
    for p in paths:
        print(p)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.cutoff_bump < 0:
        raise ConfigError("--cutoff-bump must be nonnegative")
    rows = run_oracle_suite(
        PhysicalConstants(args.eB), tolerance=args.tolerance, cutoff_bump=args.cutoff_bump
    )
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["scenario", "matrix", "max_rel_err", "tolerance", "pass"])
    for row in rows:
        writer.writerow(row.csv_fields())
    return EXIT_OK if all(r.passed for r in rows) else EXIT_VERIFY


def cmd_dump_operators(args) -> int:
    cutoff = parse_cutoff(args.cutoff)
    ops = all_operators(cutoff, PhysicalConstants(args.eB), args.mass)
    names = args.operators.split(",") if args.operators else list(ops)
    missing = [n for n in names if n not in ops]
    if missing:
        raise ConfigError(f"unknown operators {missing}; available: {sorted(ops)}")
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in names:
        path = outdir / f"{name}.txt"
        dump_operator(ops[name], path)
        print(path)
    return EXIT_OK


def _scenario_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON file with scenario fields; flags override it")
    p.add_argument("--generators", choices=["canonical", "mechanical"])
    p.add_argument("--state", choices=["pure", "thermal"])
    p.add_argument("--eB", type=float)
    p.add_argument("--beta-omega", dest="beta_omega", type=float)
    p.add_argument("--L0", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--cutoff", help="Fock cutoff as N or NA,NB")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcrb", description="Quantum Cramer-Rao bounds for an electron in a magnetic field."
    )
    parser.add_argument("--version", action="version", version=f"qcrb {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fisher", help="print the Fisher bundle of a scenario as JSON")
    _scenario_flags(p)
    p.add_argument("--verify", action="store_true", help="cross-check with the numerical solver")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(func=cmd_fisher)

    p = sub.add_parser("chempot", help="chemical potential for a target <L>")
    p.add_argument("--beta-omega", dest="beta_omega", type=float)
    p.add_argument("--L0", type=float)
    p.add_argument(
        "--sweep",
        nargs="?",
        const="0.1,1,5:-4:4:0.05",
        help="BW,...:START:STOP:STEP grid; CSV output (default: the figure-1 grid)",
    )
    p.set_defaults(func=cmd_chempot)

    p = sub.add_parser("region", help="uncertainty-region boundary as CSV")
    _scenario_flags(p)
    p.add_argument("--v11-max", dest="v11_max", type=float)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--raw-units", action="store_true", help="raw units instead of lam^2")
    p.add_argument("--output", help="write the CSV here and print a JSON summary")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("figure", help="write figure-N.csv and figure-N.svg")
    p.add_argument("number", type=int, choices=[1, 2, 3, 4])
    p.add_argument("--output-dir", default=".")
    p.add_argument("--eB", type=float, default=2.0)
    p.add_argument("--raw-units", action="store_true")
    p.add_argument("--no-svg", action="store_true")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="numerical solver against every closed form")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--cutoff-bump", dest="cutoff_bump", type=int, default=0)
    p.add_argument("--eB", type=float, default=2.0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump-operators", help="write operator matrices as text files")
    p.add_argument("--cutoff", default="4,4")
    p.add_argument("--eB", type=float, default=2.0)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--operators", help="comma-separated labels (default: all)")
    p.add_argument("--output-dir", default=".")
    p.set_defaults(func=cmd_dump_operators)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CutoffTooSmall as exc:
        print(f"qcrb: {exc}", file=sys.stderr)
        return EXIT_CUTOFF
    except (ConfigError, NonPhysicalBranch) as exc:
        print(f"qcrb: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"qcrb: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"qcrb: {exc}", file=sys.stderr)
        return EXIT_CONFIG
