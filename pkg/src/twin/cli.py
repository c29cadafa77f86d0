"""Command line entry points. Thin wrappers over the library and service."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from datetime import timedelta
from pathlib import Path

from .config import ServiceConfig
from .errors import TwinError
from .rollup import IntegratedStatus
from .runtime import TwinRuntime
from .sim import generate, load_scenario, write_stream
from .store import format_ts
from .workorders import OrderStatus


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twin",
        description="Digital twin for library lighting assets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--config", required=True, help="service config JSON")
    serve.add_argument("--host", default=None)
    serve.add_argument("--port", type=int, default=None)

    simulate = sub.add_parser("simulate", help="generate deterministic telemetry")
    simulate.add_argument("--config", required=True, help="scenario JSON")
    simulate.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    simulate.add_argument("--out", default="-", help="output file, '-' for stdout")

    replay = sub.add_parser("replay", help="run the evaluation loop over recorded telemetry")
    replay.add_argument("--data", required=True, help="event log to evaluate (appended to)")
    replay.add_argument("--config", required=True, help="service config JSON")

    report = sub.add_parser("report", help="print the building status table")
    report.add_argument("--data", required=True, help="event log to read")
    report.add_argument("--config", required=True, help="service config JSON")

    return parser


def _level_cell(level) -> str:
    if level is None:
        return "-"
    return f"{int(level)} {level.color}"


def _print_status(status: IntegratedStatus, out) -> None:
    print(f"{'ASSET':<44} {'NOW':<10} {'3 MONTHS':<10} {'6 MONTHS':<10}", file=out)

    def walk(node: IntegratedStatus, depth: int) -> None:
        name = ("  " * depth) + node.display_name
        print(
            f"{name:<44} {_level_cell(node.now):<10} "
            f"{_level_cell(node.at_m3):<10} {_level_cell(node.at_m6):<10}",
            file=out,
        )
        for child in node.children:
            if child.children or depth < 1:
                walk(child, depth + 1)

    walk(status, 0)


def _print_orders(runtime: TwinRuntime, out) -> None:
    orders = runtime.book.list_orders()
    live = [o for o in orders if o.status not in (OrderStatus.DONE, OrderStatus.CANCELLED)]
    if not live:
        print("no live work orders", file=out)
        return
    print(f"{'ORDER':<22} {'KIND':<5} {'STATUS':<12} {'DUE':<22} PATH", file=out)
    for order in sorted(live, key=lambda o: (o.priority, o.due_by, o.id)):
        slot = f" (day {order.slot.day}, {order.slot.tech})" if order.slot else ""
        print(
            f"{order.id:<22} {order.kind.value:<5} {order.status.value + slot:<12} "
            f"{format_ts(order.due_by):<22} {order.path}",
            file=out,
        )


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    config = ServiceConfig.load(args.config)
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    runtime = TwinRuntime(config)
    app = create_app(runtime, run_loop=True)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


def _cmd_simulate(args) -> int:
    config_path = Path(args.config)
    raw = json.loads(config_path.read_text(encoding="utf-8"))
    scenario = load_scenario(raw, config_path.parent)
    if args.seed is not None:
        scenario = dataclasses.replace(scenario, seed=args.seed)
    if args.out == "-":
        count = write_stream(generate(scenario), sys.stdout)
        print(f"wrote {count} events", file=sys.stderr)
    else:
        out_path = Path(args.out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        with out_path.open("w", encoding="utf-8") as handle:
            count = write_stream(generate(scenario), handle)
        print(f"wrote {count} events to {out_path}")
    return 0


def _load_runtime(data: str, config_path: str) -> TwinRuntime:
    config = ServiceConfig.load(config_path)
    config.data_log_path = Path(data).resolve()
    return TwinRuntime(config)


def _cmd_replay(args) -> int:
    runtime = _load_runtime(args.data, args.config)
    ticks = runtime.replay()
    alarms = sum(len(t.new_alarms) for t in ticks)
    orders = [o for t in ticks for o in t.new_orders]
    scheduled = sum(len(t.scheduled) for t in ticks)
    overflow = {order_id for t in ticks for order_id in t.overflow}
    by_kind = {"cm": 0, "pdm": 0, "pm": 0}
    for order in orders:
        by_kind[order.kind.value] += 1
    print(
        f"replayed {len(ticks)} ticks: {alarms} alarms, "
        f"{by_kind['cm']} corrective / {by_kind['pdm']} predictive / {by_kind['pm']} preventive orders, "
        f"{scheduled} scheduled, {len(overflow)} overflowed"
    )
    print()
    _print_status(runtime.status(), sys.stdout)
    print()
    _print_orders(runtime, sys.stdout)
    runtime.close()
    return 0


def _cmd_report(args) -> int:
    runtime = _load_runtime(args.data, args.config)
    print(f"as of {format_ts(runtime.as_of)}")
    print()
    _print_status(runtime.status(), sys.stdout)
    print()
    _print_orders(runtime, sys.stdout)
    runtime.close()
    return 0


_COMMANDS = {
    "serve": _cmd_serve,
    "simulate": _cmd_simulate,
    "replay": _cmd_replay,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except TwinError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
