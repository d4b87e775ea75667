"""Command-line entry point: run, sweep, contacts, validate.

Exit codes: 0 success, 2 config/usage error, 3 IO error, 4 validation
failure. Outputs are written to a temporary file and renamed, so a failed
run never leaves a partial export behind.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .config import LoadedConfig, load_config
from .contacts import build_terg, contact_plan_csv, terg_to_dict
from .errors import ConfigError, InvalidParameterError, SagsimError
from .simulation import (
    run_scenario,
    run_steps_csv,
    run_summary_csv,
    sweep_beam_cap,
    sweep_csv,
    sweep_num_haps,
    sweep_to_dict,
)
from .validate import DEFAULT_INSTANCES, DEFAULT_SEED, validate_solver

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_VALIDATION = 4

SWEEP_PARAMS = ("beam_cap", "num_haps")


@dataclass
class CliInvocation:
    subcommand: str
    config_path: str | None
    output_path: str | None
    overrides: tuple[str, ...]
    args: argparse.Namespace

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliInvocation":
        return cls(
            subcommand=args.subcommand,
            config_path=args.config,
            output_path=getattr(args, "out", None),
            overrides=tuple(args.set or ()),
            args=args,
        )


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError:
        if tmp.exists():
            tmp.unlink()
        raise


def parse_values_expr(expr: str) -> list[int]:
    """Value list grammar: 'a:b' inclusive integer range, or 'v1,v2,...'."""
    expr = expr.strip()
    try:
        if ":" in expr:
            lo_s, hi_s = expr.split(":", 1)
            lo, hi = int(lo_s), int(hi_s)
            if lo > hi:
                raise ConfigError(f"range {expr!r} is empty (start > end)")
            return list(range(lo, hi + 1))
        values = [int(tok) for tok in expr.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(
            f"values {expr!r} not understood; use 'a:b' or a comma list"
        ) from None
    if not values:
        raise ConfigError("values list is empty")
    return values


def _load(inv: CliInvocation) -> LoadedConfig:
    return load_config(inv.config_path, inv.overrides)


def cmd_run(inv: CliInvocation) -> int:
    loaded = _load(inv)
    series = run_scenario(loaded.scenario)
    out = Path(inv.output_path)
    steps_out = out.with_name(out.stem + ".steps" + out.suffix)
    _write_atomic(out, run_summary_csv(series))
    _write_atomic(steps_out, run_steps_csv(series))
    print(f"wrote {out} and {steps_out}")
    return EXIT_OK


def cmd_sweep(inv: CliInvocation) -> int:
    loaded = _load(inv)
    param = inv.args.param or loaded.sweep_param
    values_expr = inv.args.values or loaded.sweep_values
    replications = inv.args.replications or loaded.sweep_replications or 20
    if param is None or values_expr is None:
        raise ConfigError("sweep needs --param and --values (or sweep.* config keys)")
    if param not in SWEEP_PARAMS:
        raise ConfigError(
            f"sweep param {param!r} unknown; supported params: "
            f"{', '.join(SWEEP_PARAMS)}"
        )
    values = parse_values_expr(values_expr)
    sweep = sweep_beam_cap if param == "beam_cap" else sweep_num_haps
    result = sweep(loaded.scenario, values, replications)
    out = Path(inv.output_path)
    _write_atomic(out, sweep_csv(result))
    if inv.args.json:
        _write_atomic(Path(inv.args.json),
                      json.dumps(sweep_to_dict(result), indent=2) + "\n")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_contacts(inv: CliInvocation) -> int:
    loaded = _load(inv)
    terg = build_terg(
        loaded.scenario,
        horizon_s=loaded.contacts_horizon_s,
        coarse_step_s=loaded.contacts_coarse_step_s,
        refine_tol_s=loaded.contacts_refine_tol_s,
        profile_step_s=loaded.contacts_profile_step_s,
    )
    out = Path(inv.output_path)
    _write_atomic(out, contact_plan_csv(terg))
    if inv.args.json:
        _write_atomic(Path(inv.args.json),
                      json.dumps(terg_to_dict(terg), indent=2) + "\n")
    print(f"wrote {out} ({len(terg.windows)} windows)")
    return EXIT_OK


def cmd_validate(inv: CliInvocation) -> int:
    report = validate_solver(inv.args.instances, inv.args.seed)
    print(f"{report.num_passed}/{report.num_instances} instances passed, "
          f"{len(report.failures)} failed")
    for failure in report.failures:
        print(f"FAIL {failure}", file=sys.stderr)
    if inv.output_path:
        lines = ["status,detail"]
        lines += [f"pass,{report.num_passed}/{report.num_instances}"]
        lines += [f"fail,{msg}" for msg in report.failures]
        _write_atomic(Path(inv.output_path), "\n".join(lines) + "\n")
    return EXIT_OK if report.ok else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sagsim",
        description="Satellite-to-HAP link coordination simulator",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, out_required=True):
        p.add_argument("--config", metavar="PATH", default=None,
                       help="key = value config file (defaults used if omitted)")
        p.add_argument("--set", metavar="KEY=VALUE", action="append", default=[],
                       help="override a config key (repeatable)")
        if out_required:
            p.add_argument("--out", metavar="PATH", required=True,
                           help="output CSV path (written atomically)")

    p_run = sub.add_parser("run", help="run one scenario, export summary + per-step CSV")
    common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="sweep beam_cap or num_haps with replications")
    common(p_sweep)
    p_sweep.add_argument("--param", choices=SWEEP_PARAMS, default=None,
                         help="parameter to sweep")
    p_sweep.add_argument("--values", metavar="EXPR", default=None,
                         help="'a:b' inclusive range or comma list, e.g. 1:10 or 10,20,50")
    p_sweep.add_argument("--replications", type=int, default=None,
                         help="placement replications per value (default 20)")
    p_sweep.add_argument("--json", metavar="PATH", default=None,
                         help="also write the structured sweep result as JSON")
    p_sweep.set_defaults(func=cmd_sweep)

    p_contacts = sub.add_parser("contacts", help="build the contact plan (TERG) export")
    common(p_contacts)
    p_contacts.add_argument("--json", metavar="PATH", default=None,
                            help="also write the structured TERG as JSON")
    p_contacts.set_defaults(func=cmd_contacts)

    p_val = sub.add_parser("validate",
                           help="check the exact solver against the brute-force oracle")
    p_val.add_argument("--config", default=None, help=argparse.SUPPRESS)
    p_val.add_argument("--set", action="append", default=[], help=argparse.SUPPRESS)
    p_val.add_argument("--out", metavar="PATH", default=None,
                       help="optional CSV report path")
    p_val.add_argument("--instances", type=int, default=DEFAULT_INSTANCES,
                       help="number of random instances (default %(default)s)")
    p_val.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help="validation seed (default %(default)s)")
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inv = CliInvocation.from_args(args)
    try:
        return args.func(inv)
    except (ConfigError, InvalidParameterError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SagsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
