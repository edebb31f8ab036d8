"""Command line entry point: ``alemo run`` and ``alemo compare``.

Exit codes: 0 success, 1 configuration error, 2 every trial failed.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import fields
from pathlib import Path

from .harness import ConfigError, ExperimentConfig, compare_runs, run_experiment

EXIT_OK, EXIT_CONFIG, EXIT_FAILED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alemo", description="Surrogate-assisted multi-objective optimization experiments.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="run a seeded multi-trial experiment")
    r.add_argument("--problem", help="benchmark name (ZDT1, DTLZ2, ...) or 'geothermal'")
    r.add_argument("--dim", type=int)
    r.add_argument("--objectives", type=int)
    r.add_argument("--algo", choices=["alemo", "nsga2"])
    r.add_argument("--budget", type=int)
    r.add_argument("--trials", type=int)
    r.add_argument("--seed", type=int)
    r.add_argument("--workers", type=int)
    r.add_argument("--out")
    r.add_argument("--scenario", help="geothermal scenario JSON (default: bundled 2 km case)")
    r.add_argument("--label", help="method name used by 'compare' (default: the algorithm)")
    r.add_argument("--config", help="JSON file whose keys override the flags above")

    c = sub.add_parser("compare", help="compare finished experiment directories")
    c.add_argument("dirs", nargs="+")
    c.add_argument("--out", help="also write the report as JSON here")
    return p


def config_from_args(args) -> ExperimentConfig:
    known = {f.name for f in fields(ExperimentConfig)}
    values = {k: v for k, v in vars(args).items() if k in known and v is not None}
    if args.config:
        try:
            extra = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        unknown = set(extra) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "metrics" in extra:
            extra["metrics"] = tuple(extra["metrics"])
        values.update(extra)
    try:
        return ExperimentConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as exc:
        print(f"alemo: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "run":
            summary = run_experiment(config_from_args(args))
            n_ok = len(summary["trials_ok"])
            if n_ok == 0:
                print("alemo: every trial failed; see summary.json", file=sys.stderr)
                return EXIT_FAILED
            print(f"{summary['label']} on {summary['config']['problem']}: "
                  f"{n_ok} trials, median final HV {summary['median_hv']:.6g}")
            return EXIT_OK
        report = compare_runs(args.dirs)
        print(report.text())
        if args.out:
            Path(args.out).write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    except (ConfigError, ValueError, FileNotFoundError) as exc:
        print(f"alemo: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
