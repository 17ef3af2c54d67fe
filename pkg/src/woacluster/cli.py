"""Thin command-line client over the core library and the HTTP service.

Exit codes: 0 success, 2 configuration error, 1 runtime error. All output
files land under --out; `validate` writes nothing.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import yaml

from .config import ConfigError, load_experiment_config, load_run_config
from .experiment import run_one, run_experiment
from .simulation import summary_dict

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2


def _run_overrides(args) -> list[str]:
    overrides = list(args.set or [])
    if args.strategy is not None:
        overrides.append(f"strategy={args.strategy}")
    if args.seed is not None:
        overrides.append(f"scenario.seed={args.seed}")
    if args.rounds is not None:
        overrides.append(f"scenario.max_rounds={args.rounds}")
    return overrides


def cmd_run(args) -> int:
    config = load_run_config(args.config, _run_overrides(args))
    out_dir = Path(args.out)
    result = run_one(config, out_dir)
    print(json.dumps(summary_dict(result), indent=2))
    print(f"wrote rounds.csv, summary.json, deployment.csv to {out_dir}", file=sys.stderr)
    return EXIT_OK


def cmd_experiment(args) -> int:
    overrides = list(args.set or [])
    if args.seed is not None:
        overrides.append(f"base_seed={args.seed}")
    config = load_experiment_config(args.config, overrides)
    result = run_experiment(config, Path(args.out), make_plots=not args.no_plots)
    print(f"completed {len(result.manifest['completed_cells'])} runs; outputs in {args.out}")
    return EXIT_OK


def cmd_validate(args) -> int:
    config = load_run_config(args.config, list(args.set or []))
    print(yaml.safe_dump(config.resolved(), sort_keys=False, default_flow_style=False), end="")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("woacluster.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="woacluster",
        description="WSN energy simulator with pluggable cluster-head selection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_out=True):
        p.add_argument("--config", help="YAML config file (defaults apply when omitted)")
        p.add_argument(
            "--set",
            action="append",
            metavar="KEY=VALUE",
            help="override a config key, e.g. --set scenario.seed=7 (repeatable)",
        )
        if with_out:
            p.add_argument("--out", default="out", help="output directory (default: ./out)")

    p_run = sub.add_parser("run", help="run one simulation and write round CSV + summary JSON")
    common(p_run)
    p_run.add_argument("--strategy", help="dt | leach | leach-c | pso | woa")
    p_run.add_argument("--seed", type=int, help="scenario seed")
    p_run.add_argument("--rounds", type=int, help="round budget")
    p_run.set_defaults(func=cmd_run)

    p_exp = sub.add_parser("experiment", help="run a scenarios x strategies x replicates plan")
    common(p_exp)
    p_exp.add_argument("--seed", type=int, help="base seed for replicate derivation")
    p_exp.add_argument("--no-plots", action="store_true", help="skip SVG rendering")
    p_exp.set_defaults(func=cmd_experiment)

    p_val = sub.add_parser("validate", help="check a config and print the resolved parameters")
    common(p_val, with_out=False)
    p_val.set_defaults(func=cmd_validate)

    p_srv = sub.add_parser("serve", help="start the HTTP service")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8000)
    p_srv.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
