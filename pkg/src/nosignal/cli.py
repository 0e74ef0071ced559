"""Command-line front end.

Exit codes: 0 when every verdict passes, 1 when a verdict fails, 2 on usage
or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import nosig, scenarios
from .channels import KrausChannel, validate_channel
from .tensor import DimensionSpec

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class CliConfig:
    command: str
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    seed: int = 0
    trials: int = 1000
    tolerance: float = 1e-9
    input_path: Optional[str] = None
    format: str = "json"
    dims: str = "2x2"
    basis: str = "z"
    outcome: Optional[int] = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nosignal", description="Reconstruct superluminal-signaling proposals and check why they fail.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    angles = argparse.ArgumentParser(add_help=False)
    angles.add_argument("--gamma", type=float, default=0.0, help="radians")

    g = sub.add_parser("greenberger", parents=[common, angles], help="photon / phase-shifter proposal")
    g.add_argument("--alpha", type=float, default=0.0, help="radians")
    g.add_argument("--beta", type=float, default=0.0, help="radians")
    sub.add_parser("epr", parents=[common, angles], help="spin analogue on the singlet")
    sub.add_parser("stern-gerlach", parents=[common, angles], help="pseudo-rotation on one SG path")

    e = sub.add_parser("erasure", parents=[common], help="selective vs non-selective measurement")
    e.add_argument("--basis", choices=sorted(scenarios.BASES), default="z")
    e.add_argument("--outcome", type=int, default=None, help="selected outcome index (omit for non-selective)")

    f = sub.add_parser("fuzz", parents=[common], help="randomized no-signaling check")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--trials", type=int, default=1000)
    f.add_argument("--dims", default="2x2", help="e.g. 2x3; the channel acts on the last factor")
    f.add_argument("--tolerance", type=float, default=1e-9)

    c = sub.add_parser("classify", parents=[common], help="validate a channel JSON file")
    c.add_argument("--input", dest="input_path", required=True)
    return parser


def parse_config(argv: List[str]) -> CliConfig:
    ns = build_parser().parse_args(argv)
    cfg = CliConfig(**{k: v for k, v in vars(ns).items() if v is not None})
    if cfg.tolerance <= 0:
        raise ValueError("--tolerance must be positive")
    if cfg.trials < 1:
        raise ValueError("--trials must be at least 1")
    return cfg


def run(cfg: CliConfig) -> dict:
    if cfg.command == "greenberger":
        return scenarios.run_greenberger(cfg.alpha, cfg.beta, cfg.gamma).to_json()
    if cfg.command == "epr":
        return scenarios.run_epr_bohm(cfg.gamma).to_json()
    if cfg.command == "stern-gerlach":
        return scenarios.run_stern_gerlach(cfg.gamma).to_json()
    if cfg.command == "erasure":
        return scenarios.run_erasure(cfg.basis, cfg.outcome).to_json()
    if cfg.command == "fuzz":
        return nosig.fuzz_report(cfg.seed, cfg.trials, DimensionSpec.parse(cfg.dims), cfg.tolerance)
    if cfg.command == "classify":
        with open(cfg.input_path) as fh:
            channel = KrausChannel.from_json(json.load(fh))
        return {"scenario": "classify", "params": {"input": cfg.input_path},
                **validate_channel(channel).to_json()}
    raise ValueError(f"unknown command {cfg.command!r}")


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        if set(value) == {"dims", "matrix"}:
            return  # density matrices are JSON-only
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, rows)
    elif isinstance(value, bool):
        rows.append((prefix, "yes" if value else "no"))
    elif isinstance(value, float):
        if abs(value) < 1e-12:
            value = 0.0
        rows.append((prefix, f"{value:.4f}" if abs(value) >= 1e-4 or value == 0 else f"{value:.3e}"))
    elif isinstance(value, list):
        rows.append((prefix, ", ".join(str(v) for v in value)))
    else:
        rows.append((prefix, str(value)))


def format_table(report: dict) -> str:
    rows: list = []
    _flatten("", report, rows)
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = run(cfg)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.format == "table":
        print(format_table(report))
    else:
        print(json.dumps(report, indent=2))
    return EXIT_PASS if report.get("pass") else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
