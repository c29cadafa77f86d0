"""Deterministic telemetry generator for a configured building.

Each parameter follows exponential decay with additive Gaussian noise:

    value(k) = initial * exp(-decay_per_hour * hours) + sigma * N(0, 1)

clamped to the parameter's domain.  All randomness comes from splitmix64
streams seeded per path, so the same scenario and seed produce the same
byte sequence on any machine; Python's own RNG is never touched.  Faults
can be injected mid-run: a lamp failure collapses output to a residual
fraction, an overheating driver gains a temperature offset, a stuck
sensor repeats its last healthy value.

The outdoor context follows a half-sine daylight arc between sunrise and
sunset, attenuated by random cloud cover.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from datetime import datetime, timedelta, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Iterator

from .assets import AssetTree, build_tree
from .errors import InvalidScenarioError, OutOfSpanError
from .store import encode_event, format_ts, parse_ts

_MASK64 = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def _fnv1a64(text: str) -> int:
    digest = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        digest = ((digest ^ byte) * 0x100000001B3) & _MASK64
    return digest


class Stream:
    """One splitmix64 random stream."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state, z = _splitmix64(self._state)
        return z

    def uniform(self) -> float:
        # (0, 1]: keeps log() in the normal draw finite.
        return ((self.next_u64() >> 11) + 1) * 2.0 ** -53

    def gauss(self) -> float:
        u1 = self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def stream_for(seed: int, path: str) -> Stream:
    return Stream(seed ^ _fnv1a64(path))


class FaultKind(str, Enum):
    LAMP_FAILURE = "lamp_failure"
    DRIVER_OVERTEMP = "driver_overtemp"
    STUCK = "stuck"


@dataclass(frozen=True)
class FaultSpec:
    path: str
    at: datetime
    kind: FaultKind
    residual: float = 0.05  # lamp failure: fraction of output left
    delta: float = 20.0     # driver overtemp: added degrees


@dataclass(frozen=True)
class ProcessParams:
    initial: float
    decay_per_hour: float = 0.0
    sigma: float = 0.0


@dataclass(frozen=True)
class ContextModel:
    latitude: float
    longitude: float
    utc_offset_hours: float = 0.0
    peak_lux: float = 10_000.0
    sunrise_hour: float = 6.0
    sunset_hour: float = 18.0
    cloud_attenuation: float = 0.75


@dataclass(frozen=True)
class Scenario:
    tree_config: dict[str, Any]
    seed: int
    start: datetime
    days: float
    cadence: timedelta
    processes: dict[str, ProcessParams]
    context: ContextModel
    faults: tuple[FaultSpec, ...] = ()

    @property
    def end(self) -> datetime:
        return self.start + timedelta(days=self.days)


def daylight(context: ContextModel, ts: datetime, cloud_cover: float) -> float:
    """Outdoor illuminance: half sine between sunrise and sunset, else 0."""
    local = ts + timedelta(hours=context.utc_offset_hours)
    hour = local.hour + local.minute / 60.0 + local.second / 3600.0
    if not context.sunrise_hour < hour < context.sunset_hour:
        return 0.0
    arc = math.sin(
        math.pi * (hour - context.sunrise_hour) / (context.sunset_hour - context.sunrise_hour)
    )
    return max(0.0, context.peak_lux * arc * (1.0 - context.cloud_attenuation * cloud_cover))


def inject_fault(scenario: Scenario, fault: FaultSpec) -> Scenario:
    if not scenario.start <= fault.at < scenario.end:
        raise OutOfSpanError(
            f"fault at {format_ts(fault.at)} outside scenario span "
            f"[{format_ts(scenario.start)}, {format_ts(scenario.end)})"
        )
    return replace(scenario, faults=(*scenario.faults, fault))


def _process_for(scenario: Scenario, path: str, parameter_id: str) -> ProcessParams:
    if path in scenario.processes:
        return scenario.processes[path]
    if parameter_id in scenario.processes:
        return scenario.processes[parameter_id]
    raise InvalidScenarioError(f"no process parameters for {path!r} (id {parameter_id!r})")


def generate(scenario: Scenario, tree: AssetTree | None = None) -> Iterator[dict[str, Any]]:
    """Yield telemetry events tick by tick, context first, then parameters
    in tree order. The ordering and every value are fully deterministic.
    """
    tree = tree or build_tree(scenario.tree_config)
    parameters = tree.parameters()
    for parameter in parameters:
        _process_for(scenario, parameter.path, parameter.id)  # fail before emitting anything

    streams = {p.path: stream_for(scenario.seed, p.path) for p in parameters}
    context_stream = stream_for(scenario.seed, "context")
    faults_by_path: dict[str, list[FaultSpec]] = {}
    for fault in scenario.faults:
        faults_by_path.setdefault(fault.path, []).append(fault)
    for fault_list in faults_by_path.values():
        fault_list.sort(key=lambda f: f.at)

    local_tz = timezone(timedelta(hours=scenario.context.utc_offset_hours))
    cadence_s = int(scenario.cadence.total_seconds())
    if cadence_s <= 0:
        raise InvalidScenarioError("cadence must be positive")
    ticks = int(scenario.days * 86_400) // cadence_s
    last_emitted: dict[str, float] = {}
    start = scenario.start
    if start.tzinfo is None:
        start = start.replace(tzinfo=timezone.utc)

    for k in range(ticks):
        ts = start + k * scenario.cadence
        cloud = context_stream.uniform()
        outdoor = daylight(scenario.context, ts, cloud)
        yield {
            "t": "context",
            "ts": format_ts(ts),
            "lat": scenario.context.latitude,
            "lon": scenario.context.longitude,
            "oi": outdoor,
            "cc": cloud,
            "local": ts.astimezone(local_tz).isoformat(),
        }

        hours = k * cadence_s / 3600.0
        for parameter in parameters:
            process = _process_for(scenario, parameter.path, parameter.id)
            value = process.initial * math.exp(-process.decay_per_hour * hours)
            value += process.sigma * streams[parameter.path].gauss()

            stuck = False
            for fault in faults_by_path.get(parameter.path, ()):
                if ts < fault.at:
                    continue
                if fault.kind is FaultKind.LAMP_FAILURE:
                    value *= fault.residual
                elif fault.kind is FaultKind.DRIVER_OVERTEMP:
                    value += fault.delta
                else:
                    stuck = True
            value = parameter.clamp(value)
            if stuck:
                # Repeat the last value emitted before the fault; a fault
                # active from the first tick freezes that tick's value.
                value = last_emitted.setdefault(parameter.path, value)
            else:
                last_emitted[parameter.path] = value
            yield {
                "t": "reading",
                "ts": format_ts(ts),
                "path": parameter.path,
                "value": value,
                "unit": parameter.unit,
            }


def write_stream(events: Iterator[dict[str, Any]], handle) -> int:
    """Encode events one per line; returns the line count."""
    count = 0
    for event in events:
        handle.write(encode_event(event) + "\n")
        count += 1
    return count


def load_scenario(raw: dict[str, Any], base_dir: Path) -> Scenario:
    """Build a scenario from its JSON form, resolving the asset config path."""
    try:
        asset_ref = raw["asset_config"]
        tree_config = json.loads((base_dir / asset_ref).read_text(encoding="utf-8"))
        processes = {
            key: ProcessParams(
                initial=float(p["initial"]),
                decay_per_hour=float(p.get("decay_per_hour", 0.0)),
                sigma=float(p.get("sigma", 0.0)),
            )
            for key, p in raw["processes"].items()
        }
        context_raw = raw.get("context", {})
        context = ContextModel(
            latitude=float(context_raw.get("latitude", 0.0)),
            longitude=float(context_raw.get("longitude", 0.0)),
            utc_offset_hours=float(context_raw.get("utc_offset_hours", 0.0)),
            peak_lux=float(context_raw.get("peak_lux", 10_000.0)),
            sunrise_hour=float(context_raw.get("sunrise_hour", 6.0)),
            sunset_hour=float(context_raw.get("sunset_hour", 18.0)),
        )
        faults = tuple(
            FaultSpec(
                path=f["path"],
                at=parse_ts(f["at"]),
                kind=FaultKind(f["kind"]),
                residual=float(f.get("residual", 0.05)),
                delta=float(f.get("delta", 20.0)),
            )
            for f in raw.get("faults", [])
        )
        scenario = Scenario(
            tree_config=tree_config,
            seed=int(raw["seed"]),
            start=parse_ts(raw["start"]),
            days=float(raw["days"]),
            cadence=timedelta(minutes=float(raw.get("cadence_minutes", 60))),
            processes=processes,
            context=context,
            faults=(),
        )
    except (KeyError, TypeError, ValueError, OSError) as exc:
        raise InvalidScenarioError(f"unusable scenario: {exc}") from exc
    for fault in faults:
        scenario = inject_fault(scenario, fault)
    return scenario
