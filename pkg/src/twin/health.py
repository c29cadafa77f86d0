"""Descriptive and diagnostic views: snapshots, alarms, likely causes.

An area snapshot is the latest classified reading per parameter.  Any
entry at or below the alarm level becomes an alarm, and each alarm is
run through a small fixed rule table that names likely causes with a
confidence apiece, worst suspicion first.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from datetime import datetime
from typing import TYPE_CHECKING

from .assets import AssetNode, HealthLevel, NodeKind, classify_value
from .errors import (
    NonFiniteError,
    OutOfDomainError,
    PathNotFoundError,
    UnknownAlarmError,
)
from .rollup import Critical, Policy, rollup, weights_for
from .store import format_ts, parse_ts

if TYPE_CHECKING:
    from .assets import AssetTree
    from .store import TelemetryStore

DEFAULT_ALARM_LEVEL = 2


def classify_level(node: AssetNode, value: float) -> HealthLevel:
    """Classify a value against a parameter's bands, enforcing its domain."""
    if node.kind is not NodeKind.PARAMETER or node.direction is None or node.bands is None:
        raise PathNotFoundError(f"{node.path!r} is not a banded parameter")
    if not math.isfinite(value):
        raise NonFiniteError(f"cannot classify non-finite value {value!r}")
    if not node.in_domain(value):
        lo, hi = node.domain
        raise OutOfDomainError(f"{value!r} outside domain [{lo}, {hi}] of {node.path!r}")
    return classify_value(node.direction, node.bands, value)


@dataclass(frozen=True)
class SnapshotEntry:
    parameter_id: str
    path: str
    ts: datetime | None
    value: float | None
    unit: str
    level: HealthLevel | None

    @property
    def has_data(self) -> bool:
        return self.level is not None


@dataclass(frozen=True)
class AreaSnapshot:
    path: str
    as_of: datetime
    entries: tuple[SnapshotEntry, ...]
    area_level: HealthLevel | None


def snapshot_area(
    tree: "AssetTree",
    store: "TelemetryStore",
    path: str,
    at: datetime,
    policy: Policy | None = None,
) -> AreaSnapshot:
    """Latest classified reading per parameter of one area.

    Parameters without a reading yet appear with no value and no level
    and are excluded from the area aggregate.  Also accepts subsystems
    that carry parameters directly.
    """
    node = tree.resolve(path)
    if not node.children or any(c.kind is not NodeKind.PARAMETER for c in node.children):
        raise PathNotFoundError(f"{path!r} does not hold measured parameters")
    policy = policy if policy is not None else Critical()

    entries: list[SnapshotEntry] = []
    for parameter in node.children:
        reading = store.latest_at(parameter.path, at)
        if reading is None:
            entries.append(
                SnapshotEntry(parameter.id, parameter.path, None, None, parameter.unit, None)
            )
            continue
        level = classify_value(parameter.direction, parameter.bands, reading.value)  # type: ignore[arg-type]
        entries.append(
            SnapshotEntry(parameter.id, parameter.path, reading.ts, reading.value, reading.unit, level)
        )

    weights = weights_for(policy, node.children)
    pairs = [
        (entry.level, weight)
        for entry, weight in zip(entries, weights)
        if entry.level is not None
    ]
    area_level = rollup(pairs, policy) if pairs else None
    return AreaSnapshot(path=path, as_of=at, entries=tuple(entries), area_level=area_level)


@dataclass(frozen=True)
class Alarm:
    id: str
    path: str
    area_path: str
    parameter_id: str
    ts: datetime
    level: HealthLevel
    value: float
    unit: str

    def to_event(self) -> dict:
        return {
            "t": "alarm",
            "id": self.id,
            "ts": format_ts(self.ts),
            "path": self.path,
            "area": self.area_path,
            "parameter": self.parameter_id,
            "level": int(self.level),
            "value": self.value,
            "unit": self.unit,
        }

    @classmethod
    def from_event(cls, event: dict) -> "Alarm":
        return cls(
            id=event["id"],
            path=event["path"],
            area_path=event["area"],
            parameter_id=event["parameter"],
            ts=parse_ts(event["ts"]),
            level=HealthLevel(int(event["level"])),
            value=float(event["value"]),
            unit=event.get("unit", ""),
        )


def alarm_id(path: str, ts: datetime) -> str:
    digest = hashlib.blake2s(f"{path}@{format_ts(ts)}".encode(), digest_size=8).hexdigest()
    return f"alm-{digest}"


def detect_alarms(snapshot: AreaSnapshot, alarm_level: int = DEFAULT_ALARM_LEVEL) -> list[Alarm]:
    """Entries at or below the alarm level, ordered by parameter id."""
    out: list[Alarm] = []
    for entry in sorted(snapshot.entries, key=lambda e: e.parameter_id):
        if entry.level is None or int(entry.level) > alarm_level:
            continue
        assert entry.ts is not None and entry.value is not None
        out.append(
            Alarm(
                id=alarm_id(entry.path, entry.ts),
                path=entry.path,
                area_path=snapshot.path,
                parameter_id=entry.parameter_id,
                ts=entry.ts,
                level=entry.level,
                value=entry.value,
                unit=entry.unit,
            )
        )
    return out


# -- diagnosis ------------------------------------------------------------

LAMP_FAILURE = "LAMP_FAILURE"
LUMEN_DEPRECIATION = "LUMEN_DEPRECIATION"
LOW_DAYLIGHT_CONTRIBUTION = "LOW_DAYLIGHT_CONTRIBUTION"
DRIVER_OVERTEMP = "DRIVER_OVERTEMP"
UNKNOWN_CAUSE = "UNKNOWN_CAUSE"


@dataclass(frozen=True)
class Cause:
    code: str
    confidence: float
    evidence: str


@dataclass(frozen=True)
class Diagnosis:
    alarm_id: str
    where: tuple[str, ...]
    causes: tuple[Cause, ...]


@dataclass(frozen=True)
class DiagnosisRules:
    """Tunable knobs of the cause rule table."""

    illuminance_id: str = "illuminance"
    burning_hours_id: str = "burning-hours"
    driver_temp_id: str = "driver-temp"
    rated_life_hours: float = 50_000.0
    worn_life_fraction: float = 0.8
    low_daylight_lux: float = 1_000.0
    failure_drop_fraction: float = 0.9
    overtemp_level: int = 2


DEFAULT_RULES = DiagnosisRules()


def _sibling(tree: "AssetTree", parameter: AssetNode, sibling_id: str) -> AssetNode | None:
    parent = tree.parent_of(parameter)
    if parent is None:
        return None
    for child in parent.children:
        if child.id == sibling_id:
            return child
    return None


def diagnose(
    tree: "AssetTree",
    store: "TelemetryStore",
    alarm: Alarm,
    rules: DiagnosisRules = DEFAULT_RULES,
) -> Diagnosis:
    """Rank likely causes for an alarm, highest confidence first."""
    if alarm.path not in tree:
        raise UnknownAlarmError(f"alarm {alarm.id} points at unknown path {alarm.path!r}")
    parameter = tree.resolve(alarm.path)
    if parameter.kind is not NodeKind.PARAMETER:
        raise UnknownAlarmError(f"alarm {alarm.id} does not point at a parameter")

    causes: list[Cause] = []

    if parameter.id == rules.illuminance_id:
        recent = store.last_n_at(alarm.path, alarm.ts, 2)
        if len(recent) == 2 and recent[0].value > 0:
            drop = (recent[0].value - recent[1].value) / recent[0].value
            if drop > rules.failure_drop_fraction:
                causes.append(
                    Cause(
                        LAMP_FAILURE, 0.9,
                        f"output fell {drop:.0%} between {format_ts(recent[0].ts)}"
                        f" and {format_ts(recent[1].ts)}",
                    )
                )

        hours_node = _sibling(tree, parameter, rules.burning_hours_id)
        if hours_node is not None:
            hours = store.latest_at(hours_node.path, alarm.ts)
            if hours is not None and hours.value > rules.worn_life_fraction * rules.rated_life_hours:
                causes.append(
                    Cause(
                        LUMEN_DEPRECIATION, 0.7,
                        f"{hours.value:.0f} burning hours exceed "
                        f"{rules.worn_life_fraction:.0%} of the {rules.rated_life_hours:.0f} h rated life",
                    )
                )

        context = store.latest_context(alarm.ts)
        if context is not None and context.outdoor_illuminance < rules.low_daylight_lux:
            causes.append(
                Cause(
                    LOW_DAYLIGHT_CONTRIBUTION, 0.6,
                    f"outdoor illuminance {context.outdoor_illuminance:.0f} lux below "
                    f"{rules.low_daylight_lux:.0f} lux at {format_ts(context.ts)}",
                )
            )

    if parameter.id == rules.driver_temp_id:
        suffix = f" {alarm.unit}" if alarm.unit else ""
        causes.append(
            Cause(DRIVER_OVERTEMP, 0.6, f"driver temperature itself reads {alarm.value:g}{suffix}")
        )
    else:
        temp_node = _sibling(tree, parameter, rules.driver_temp_id)
        if temp_node is not None and temp_node.bands is not None and temp_node.direction is not None:
            temp = store.latest_at(temp_node.path, alarm.ts)
            if temp is not None:
                temp_level = classify_value(temp_node.direction, temp_node.bands, temp.value)
                if int(temp_level) <= rules.overtemp_level:
                    causes.append(
                        Cause(
                            DRIVER_OVERTEMP, 0.6,
                            f"sibling driver temperature at {temp.value:g} classifies level {int(temp_level)}",
                        )
                    )

    if not causes:
        causes.append(Cause(UNKNOWN_CAUSE, 0.0, "no rule matched the observed pattern"))
    causes.sort(key=lambda c: -c.confidence)

    segments = alarm.path.split("/")
    where = tuple("/".join(segments[:depth]) for depth in range(3, len(segments) + 1))
    if not where:
        where = (alarm.path,)
    return Diagnosis(alarm_id=alarm.id, where=where, causes=tuple(causes))
