"""Command line interface.

`psdolab verify <target>` runs one experiment; `psdolab report all` runs
every target and writes an index.  Each run emits a canonical JSON report
(byte-stable for a fixed config and seed) plus a flat CSV table.  Exit
status is 0 only when every requested verdict is "pass".
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import HypothesisViolation, load_config
from .experiments import VERIFY_TARGETS, run_all
from .report import write_csv, write_report_json

__all__ = ["main"]


def _add_common_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", default=None, metavar="PATH",
                    help="key=value config file")
    sp.add_argument("--seed", type=int, default=None,
                    help="override run.seed")
    sp.add_argument("--out", default=None, metavar="DIR",
                    help="override run.out report directory")
    sp.add_argument("--grid-n", type=int, default=None,
                    help="override grid.n")
    sp.add_argument("--grid-l", type=float, default=None,
                    help="override grid.l")


def _overrides(args: argparse.Namespace) -> dict:
    ov = {}
    if args.seed is not None:
        ov["run.seed"] = args.seed
    if args.out is not None:
        ov["run.out"] = args.out
    if args.grid_n is not None:
        ov["grid.n"] = args.grid_n
    if args.grid_l is not None:
        ov["grid.l"] = args.grid_l
    return ov


def _flat_rows(report):
    # one row per scalar so the table stays plot-ready
    rows = []
    for item in report.items:
        value = item["value"]
        if isinstance(value, dict):
            for key in sorted(value):
                v = value[key]
                if isinstance(v, bool):
                    rows.append((item["id"], key, int(v)))
                elif isinstance(v, (int, float)):
                    rows.append((item["id"], key, v))
        elif isinstance(value, (int, float)):
            rows.append((item["id"], "value", value))
    return rows


def _emit(report, out_dir: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    json_path = os.path.join(out_dir, f"{report.experiment}.json")
    write_report_json(report, json_path)
    write_csv(
        os.path.join(out_dir, f"{report.experiment}.csv"),
        ("id", "key", "value"),
        _flat_rows(report),
    )
    return json_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="psdolab",
        description="Desk-scale verification harness for weighted bounds "
        "on oscillatory-kernel operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp_verify = sub.add_parser("verify", help="run one experiment")
    sp_verify.add_argument("target", choices=list(VERIFY_TARGETS))
    _add_common_flags(sp_verify)

    sp_report = sub.add_parser("report", help="run every experiment")
    sp_report.add_argument("what", choices=["all"])
    _add_common_flags(sp_report)

    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config, _overrides(args))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "verify":
            report = VERIFY_TARGETS[args.target](cfg)
            path = _emit(report, cfg.out_dir)
            print(f"{args.target}: {report.verdict}  [{path}]")
            return 0 if report.passed else 1

        reports = run_all(cfg)
        index, all_ok = {}, True
        for name, report in reports.items():
            path = _emit(report, cfg.out_dir)
            print(f"{name:<13} {report.verdict}")
            index[name] = {
                "experiment": report.experiment,
                "verdict": report.verdict,
                "report": os.path.basename(path),
            }
            all_ok = all_ok and report.passed
        summary = {
            "config_hash": cfg.digest(),
            "seed": cfg.seed,
            "experiments": index,
            "verdict": "pass" if all_ok else "fail",
        }
        summary_path = os.path.join(cfg.out_dir, "summary.json")
        with open(summary_path, "wb") as fh:
            fh.write((json.dumps(summary, sort_keys=True, indent=2) + "\n").encode())
        print(f"summary: {summary['verdict']}  [{summary_path}]")
        return 0 if all_ok else 1
    except HypothesisViolation as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
