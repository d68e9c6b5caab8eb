"""Command-line entry point: run scenarios, sweep the batteries, inspect graphs.

Subcommands: ``run`` (one scenario from a file and/or flag overrides),
``sweep1`` / ``sweep2`` (the two scenario batteries), ``net-stats``
(degree diagnostics of a generated graph). Exit codes: 0 success,
1 validation error, 2 runtime or IO error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .experiments import (
    BatchError,
    aggregate_batch,
    aggregate_runs,
    find_inversion_threshold,
    run_batch,
    sweep_scenario1,
    sweep_scenario2,
)
from .network import NetworkConfig, degree_stats, edge_list_text, generate_scale_free
from .scenario_io import (
    ScenarioError,
    build_scenario,
    tokenize_scenario_file,
    write_summary_csv,
    write_timeseries_csv,
)

# (flag, scenario-file key) pairs; every flag has a config-file equivalent.
_SCENARIO_FLAGS = [
    ("--agents", "agents"),
    ("--tv-pct", "tv_pct"),
    ("--wa-pct", "wa_pct"),
    ("--white-pct", "white_pct"),
    ("--tolerance", "tolerance"),
    ("--convergence-m", "convergence_m"),
    ("--expert-mode", "expert_mode"),
    ("--media-welfare", "media_welfare"),
    ("--media-security", "media_security"),
    ("--expert-welfare", "expert_welfare"),
    ("--expert-security", "expert_security"),
    ("--net-core", "net_core"),
    ("--net-attach", "net_attach"),
    ("--net-seed", "net_seed"),
    ("--max-ticks", "max_ticks"),
    ("--eps", "eps"),
    ("--patience", "patience"),
    ("--seeds", "seeds"),
    ("--edge-activation", "edge_activation"),
    ("--update-reads", "update_reads"),
    ("--fixed-network", "fixed_network"),
]
_ROW_KEYS = {"tv_pct", "wa_pct", "white_pct", "tolerance"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit code 1, not argparse's 2
        raise _UsageError(message)


def _add_scenario_flags(parser: argparse.ArgumentParser, *, rows: bool) -> None:
    for flag, key in _SCENARIO_FLAGS:
        if not rows and key in _ROW_KEYS:
            continue
        parser.add_argument(flag, dest=f"key_{key}", metavar="VALUE", help=f"scenario key {key}")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", default="-", help="output path, '-' for stdout")
    parser.add_argument(
        "--format",
        choices=("timeseries", "summary", "both"),
        default="both",
        help="which CSV document(s) to emit",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="opdyn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario")
    p_run.add_argument("--scenario", help="scenario file (key = value lines)")
    _add_scenario_flags(p_run, rows=True)
    _add_output_flags(p_run)

    for name, help_text in (
        ("sweep1", "battery 1: televiewer/wise-agent split, no white zone"),
        ("sweep2", "battery 2: 30-agent white zone"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "--tolerances",
            default="0.2,0.5,0.8",
            help="comma-separated tolerance levels",
        )
        _add_scenario_flags(p, rows=False)
        _add_output_flags(p)

    p_net = sub.add_parser("net-stats", help="degree diagnostics of a generated graph")
    p_net.add_argument("--agents", type=int, default=100)
    p_net.add_argument("--net-core", type=int, default=3)
    p_net.add_argument("--net-attach", type=int, default=2)
    p_net.add_argument("--net-seed", type=int, default=0)
    p_net.add_argument("--export", help="write the edge list to this path")
    p_net.add_argument("--output", default="-", help="report path, '-' for stdout")
    return parser


def _collect_raw(args: argparse.Namespace) -> dict[str, tuple[str, str]]:
    raw: dict[str, tuple[str, str]] = {}
    scenario_path = getattr(args, "scenario", None)
    if scenario_path:
        raw.update(tokenize_scenario_file(Path(scenario_path).read_text(encoding="utf-8")))
    for flag, key in _SCENARIO_FLAGS:
        value = getattr(args, f"key_{key}", None)
        if value is not None:
            raw[key] = (value, flag)
    return raw


def _emit(documents: list[tuple[str, str]], output: str) -> None:
    """Write (kind, text) documents to stdout or to files derived from --output."""
    if output == "-":
        sys.stdout.write("\n".join(text for _, text in documents))
        return
    path = Path(output)
    if len(documents) == 1:
        path.write_text(documents[0][1], encoding="utf-8", newline="")
        return
    for kind, text in documents:
        sibling = path.with_name(f"{path.stem}_{kind}{path.suffix or '.csv'}")
        sibling.write_text(text, encoding="utf-8", newline="")


def _parse_tolerances(text: str) -> list[float]:
    try:
        tolerances = [float(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ScenarioError(f"--tolerances expects comma-separated numbers, got {text!r}") from None
    if not tolerances:
        raise ScenarioError("--tolerances must be non-empty")
    for t in tolerances:
        if not 0.0 <= t <= 1.0:
            raise ScenarioError(f"--tolerances values must be in [0, 1], got {t:g}")
    return tolerances


def _cmd_run(args: argparse.Namespace) -> None:
    config = build_scenario(_collect_raw(args))
    results = run_batch([config])
    documents = []
    if args.format in ("timeseries", "both"):
        documents.append(("timeseries", write_timeseries_csv(results)))
    if args.format in ("summary", "both"):
        aggregate = aggregate_runs(config, results)
        documents.append(("summary", write_summary_csv([aggregate], {})))
    _emit(documents, args.output)


def _cmd_sweep(args: argparse.Namespace, battery: int) -> None:
    tolerances = _parse_tolerances(args.tolerances)
    raw = _collect_raw(args)
    # The battery owns the row-defining keys; the base only carries the rest.
    raw.setdefault("agents", ("100", "default"))
    raw["tv_pct"] = ("0", "battery")
    raw["wa_pct"] = ("100", "battery")
    raw["white_pct"] = ("0", "battery")
    base = build_scenario(raw)
    sweep = sweep_scenario1 if battery == 1 else sweep_scenario2
    configs = sweep(tolerances, base)
    results = run_batch(configs)
    aggregates = aggregate_batch(configs, results)

    thresholds: dict[float, int | None] = {}
    if battery == 1:
        for tolerance in tolerances:
            rows = [a for a in aggregates if a.config.population.tolerance == tolerance]
            thresholds[tolerance] = find_inversion_threshold(rows)

    documents = []
    if args.format in ("timeseries", "both"):
        documents.append(("timeseries", write_timeseries_csv(results)))
    if args.format in ("summary", "both"):
        documents.append(("summary", write_summary_csv(aggregates, thresholds)))
    _emit(documents, args.output)


def _cmd_net_stats(args: argparse.Namespace) -> None:
    try:
        config = NetworkConfig(
            n=args.agents,
            seed_core_size=args.net_core,
            attach_count=args.net_attach,
            seed=args.net_seed,
        )
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    graph = generate_scale_free(config)
    stats = degree_stats(graph)
    lines = [
        f"nodes {graph.n}",
        f"edges {len(graph.edges)}",
        f"max_degree {stats.max_degree}",
        f"slope {'none' if stats.slope is None else repr(stats.slope)}",
        "degree,count",
    ]
    lines.extend(f"{k},{stats.histogram[k]}" for k in sorted(stats.histogram))
    report = "\n".join(lines) + "\n"
    if args.export:
        Path(args.export).write_text(edge_list_text(graph), encoding="utf-8", newline="")
    if args.output == "-":
        sys.stdout.write(report)
    else:
        Path(args.output).write_text(report, encoding="utf-8", newline="")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"opdyn: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        if args.command == "run":
            _cmd_run(args)
        elif args.command == "sweep1":
            _cmd_sweep(args, battery=1)
        elif args.command == "sweep2":
            _cmd_sweep(args, battery=2)
        elif args.command == "net-stats":
            _cmd_net_stats(args)
    except (ScenarioError, ValueError) as exc:
        print(f"opdyn: error: {exc}", file=sys.stderr)
        return 1
    except (BatchError, OSError) as exc:
        print(f"opdyn: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
