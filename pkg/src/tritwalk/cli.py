"""Command-line entry point: walk, sweep, compare, heatmap."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .experiments import (
    ConfigError,
    ExperimentConfig,
    RunRecord,
    compare_records,
    run_sweep_config,
    run_walk,
    similarity_csv,
    sweep_csv,
    walk_csv,
)
from .heatmap import emit_heatmap, heatmap_svg

__all__ = ["main"]


def _load_json(path: str, what: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ValueError(f"{what} not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{what} is not valid JSON: {path}: {exc}") from None


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _cmd_walk(args: argparse.Namespace) -> int:
    doc = _load_json(args.config, "config")
    if args.seed is not None:
        doc["seed"] = args.seed
    if args.raw_coordinates:
        doc["convert"] = False
    config = ExperimentConfig.from_dict(doc)
    out_path = args.out or config.output_path
    fmt = args.format or config.output_format
    record = run_walk(config)
    if record.duration_s is not None:
        print(f"walk finished in {record.duration_s:.3f} s", file=sys.stderr)
    if fmt == "csv":
        _write_output(walk_csv(record), out_path)
    elif fmt == "json":
        _write_output(record.canonical().to_json(), out_path)
    else:
        if out_path is None:
            raise ValueError("svg-heatmap output requires --out or output.path")
        emit_heatmap(record, out_path)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    doc = _load_json(args.config, "config")
    rows = run_sweep_config(doc)
    _write_output(sweep_csv(rows), args.out)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    rec_a = RunRecord.from_json(Path(args.run_a).read_text(encoding="utf-8"))
    rec_b = RunRecord.from_json(Path(args.run_b).read_text(encoding="utf-8"))
    rows = compare_records(rec_a, rec_b)
    _write_output(similarity_csv(rows), args.out)
    return 0


def _cmd_heatmap(args: argparse.Namespace) -> int:
    record = RunRecord.from_json(Path(args.record).read_text(encoding="utf-8"))
    heatmap_svg(record)  # validate before touching the output file
    emit_heatmap(record, args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tritwalk",
        description="Discrete-time quantum walk simulation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    walk = sub.add_parser("walk", help="run one walk experiment from a JSON config")
    walk.add_argument("--config", required=True, help="experiment config JSON path")
    walk.add_argument("--out", help="output path (default: stdout)")
    walk.add_argument("--format", choices=("csv", "json", "svg-heatmap"))
    walk.add_argument("--seed", type=int, help="enable shot sampling with this seed")
    walk.add_argument(
        "--raw-coordinates",
        action="store_true",
        help="keep compact (one-way) coordinates instead of converting",
    )
    walk.set_defaults(func=_cmd_walk)

    sweep = sub.add_parser("sweep", help="run an interface-population sweep")
    sweep.add_argument("--config", required=True, help="sweep config JSON path")
    sweep.add_argument("--out", help="output CSV path (default: stdout)")
    sweep.set_defaults(func=_cmd_sweep)

    compare = sub.add_parser("compare", help="per-step similarity of two run records")
    compare.add_argument("run_a", help="first RunRecord JSON path")
    compare.add_argument("run_b", help="second RunRecord JSON path")
    compare.add_argument("--out", help="output CSV path (default: stdout)")
    compare.set_defaults(func=_cmd_compare)

    heatmap = sub.add_parser("heatmap", help="render a run record as an SVG heatmap")
    heatmap.add_argument("record", help="RunRecord JSON path")
    heatmap.add_argument("--out", required=True, help="output SVG path")
    heatmap.set_defaults(func=_cmd_heatmap)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
