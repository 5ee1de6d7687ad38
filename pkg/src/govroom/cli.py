"""Command-line toolchain: lint, headless play, serve, analytics export."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import GameError
from .lint import format_report, lint_document, lint_scenario
from .scenario import parse_scenario
from .telemetry import EventStore, cohort_report_to_json, difficulty_report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="govroom", description="governance escape room toolchain")
    sub = parser.add_subparsers(dest="command", required=True)

    lint_cmd = sub.add_parser("lint", help="validate a scenario file")
    lint_cmd.add_argument("file", help="scenario JSON file")

    play_cmd = sub.add_parser("play", help="play a scenario headlessly")
    play_cmd.add_argument("file", help="scenario JSON file")
    play_cmd.add_argument(
        "--bot",
        nargs="?",
        const="reference",
        default="reference",
        choices=("reference", "random"),
        help="bot strategy (default: reference solutions)",
    )
    play_cmd.add_argument("--seed", type=int, default=0, help="random bot seed")
    play_cmd.add_argument("--steps", type=int, default=200, help="random bot step cap")

    serve_cmd = sub.add_parser("serve", help="run the HTTP gateway")
    serve_cmd.add_argument("--addr", default="127.0.0.1:8000", help="HOST:PORT to bind")
    serve_cmd.add_argument("--scenarios", required=True, help="directory of scenario files")
    serve_cmd.add_argument("--log", required=True, help="event log file")
    serve_cmd.add_argument("--instructor-token", default=None, help="bearer token for /api/analytics")

    export_cmd = sub.add_parser("export-analytics", help="print a cohort report as JSON")
    export_cmd.add_argument("--log", required=True, help="event log file")

    return parser


def _read_file(path: str) -> bytes | None:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return None


def _cmd_lint(args: argparse.Namespace) -> int:
    raw = _read_file(args.file)
    if raw is None:
        return 2
    report = lint_document(raw)
    print(format_report(report))
    return 0 if report.passed else 1


def _cmd_play(args: argparse.Namespace) -> int:
    from .bot import random_play, reference_play

    raw = _read_file(args.file)
    if raw is None:
        return 2
    try:
        scenario = parse_scenario(raw)
    except GameError as exc:
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return 1
    report = lint_scenario(scenario)
    if not report.passed:
        print(f"error: scenario fails lint: {report.errors[0].message}", file=sys.stderr)
        return 1

    try:
        if args.bot == "reference":
            run = reference_play(scenario, validated=True)
        else:
            run = random_play(scenario, seed=args.seed, steps=args.steps, validated=True)
    except GameError as exc:
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return 1

    for result in run.state.zone_results:
        print(f"zone{result.zone_index + 1} {result.zone_score:.3f}")
    if run.state.total_score is not None:
        print(f"total {run.state.total_score:.3f}")
    print(run.state.phase)
    return 0 if run.state.phase == "completed" else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app, load_scenarios

    addr = os.environ.get("GOVROOM_ADDR", args.addr)
    host, _, port_text = addr.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"error: --addr must look like HOST:PORT, got {addr!r}", file=sys.stderr)
        return 2
    playable, invalid, broken = load_scenarios(args.scenarios)
    for message in broken:
        print(f"warning: skipping unparseable scenario {message}", file=sys.stderr)
    for scenario_id in invalid:
        print(f"warning: scenario {scenario_id} fails lint and is not playable", file=sys.stderr)
    if not playable:
        print("error: no playable scenarios found", file=sys.stderr)
        return 1
    store = EventStore(args.log)
    app = create_app(
        playable, store, invalid=invalid, instructor_token=args.instructor_token
    )
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    if not Path(args.log).exists():
        print(f"error: cannot read {args.log}: no such file", file=sys.stderr)
        return 2
    try:
        store = EventStore(args.log)
    except GameError as exc:
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return 1
    logs = [store.events_for(sid) for sid in store.session_ids()]
    try:
        report = difficulty_report(logs, store.survey_responses())
    except GameError as exc:
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return 1
    print(json.dumps(cohort_report_to_json(report), indent=2, sort_keys=True))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "lint":
        return _cmd_lint(args)
    if args.command == "play":
        return _cmd_play(args)
    if args.command == "serve":
        return _cmd_serve(args)
    return _cmd_export(args)


def entrypoint() -> None:
    raise SystemExit(main())
