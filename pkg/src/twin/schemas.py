"""Request and response bodies of the HTTP interface.

Levels go over the wire as plain integers 1..5 (or null for no data),
always next to their display colour so clients never hardcode the
mapping.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

from .assets import LEVEL_COLORS, NO_DATA_COLOR, AssetNode, HealthLevel
from .forecast import ForecastPoint
from .health import AreaSnapshot, Cause, Diagnosis, SnapshotEntry
from .rollup import IntegratedStatus
from .store import Bucket, ContextRecord, format_ts
from .workorders import WorkOrder


def level_color(level: HealthLevel | int | None) -> str:
    return LEVEL_COLORS[int(level)] if level is not None else NO_DATA_COLOR


class TreeNodeOut(BaseModel):
    id: str
    kind: str
    display_name: str
    path: str
    cil: int | None = None
    unit: str | None = None
    direction: str | None = None
    children: list["TreeNodeOut"] = []

    @classmethod
    def from_node(cls, node: AssetNode) -> "TreeNodeOut":
        return cls(
            id=node.id,
            kind=node.kind.value,
            display_name=node.display_name,
            path=node.path,
            cil=node.cil,
            unit=node.unit or None,
            direction=node.direction.value if node.direction else None,
            children=[cls.from_node(child) for child in node.children],
        )


class StatusNodeOut(BaseModel):
    path: str
    id: str
    kind: str
    display_name: str
    now: int | None
    now_color: str
    at_m3: int | None
    at_m3_color: str
    at_m6: int | None
    at_m6_color: str
    children: list["StatusNodeOut"] = []

    @classmethod
    def from_status(cls, status: IntegratedStatus) -> "StatusNodeOut":
        return cls(
            path=status.path,
            id=status.id,
            kind=status.kind.value,
            display_name=status.display_name,
            now=int(status.now) if status.now is not None else None,
            now_color=level_color(status.now),
            at_m3=int(status.at_m3) if status.at_m3 is not None else None,
            at_m3_color=level_color(status.at_m3),
            at_m6=int(status.at_m6) if status.at_m6 is not None else None,
            at_m6_color=level_color(status.at_m6),
            children=[cls.from_status(child) for child in status.children],
        )


class StatusOut(BaseModel):
    as_of: str
    building: StatusNodeOut


class SnapshotEntryOut(BaseModel):
    parameter: str
    path: str
    ts: str | None
    value: float | None
    unit: str
    level: int | None
    color: str

    @classmethod
    def from_entry(cls, entry: SnapshotEntry) -> "SnapshotEntryOut":
        return cls(
            parameter=entry.parameter_id,
            path=entry.path,
            ts=format_ts(entry.ts) if entry.ts else None,
            value=entry.value,
            unit=entry.unit,
            level=int(entry.level) if entry.level is not None else None,
            color=level_color(entry.level),
        )


class CauseOut(BaseModel):
    code: str
    confidence: float
    evidence: str

    @classmethod
    def from_cause(cls, cause: Cause) -> "CauseOut":
        return cls(code=cause.code, confidence=cause.confidence, evidence=cause.evidence)


class SnapshotAlarmOut(BaseModel):
    id: str
    ts: str
    path: str
    parameter: str
    level: int
    value: float
    where: list[str]
    causes: list[CauseOut]


class SnapshotOut(BaseModel):
    path: str
    as_of: str
    area_level: int | None
    color: str
    entries: list[SnapshotEntryOut]
    alarms: list[SnapshotAlarmOut]

    @classmethod
    def from_snapshot(
        cls, snapshot: AreaSnapshot, alarms: list[tuple[Any, Diagnosis]]
    ) -> "SnapshotOut":
        return cls(
            path=snapshot.path,
            as_of=format_ts(snapshot.as_of),
            area_level=int(snapshot.area_level) if snapshot.area_level is not None else None,
            color=level_color(snapshot.area_level),
            entries=[SnapshotEntryOut.from_entry(e) for e in snapshot.entries],
            alarms=[
                SnapshotAlarmOut(
                    id=alarm.id,
                    ts=format_ts(alarm.ts),
                    path=alarm.path,
                    parameter=alarm.parameter_id,
                    level=int(alarm.level),
                    value=alarm.value,
                    where=list(diagnosis.where),
                    causes=[CauseOut.from_cause(c) for c in diagnosis.causes],
                )
                for alarm, diagnosis in alarms
            ],
        )


class BucketOut(BaseModel):
    start: str
    mean: float | None
    count: int

    @classmethod
    def from_bucket(cls, bucket: Bucket) -> "BucketOut":
        return cls(start=format_ts(bucket.start), mean=bucket.mean, count=bucket.count)


class HistoryOut(BaseModel):
    path: str
    window: str
    end: str
    buckets: list[BucketOut]


class TrendModelOut(BaseModel):
    method: str
    level: float
    trend: float
    alpha: float
    beta: float
    n_points: int
    residual_std: float


class ForecastOut(BaseModel):
    path: str
    horizon: str
    as_of: str
    predicted_value: float
    predicted_level: int
    color: str
    interval_low: float
    interval_high: float
    model: TrendModelOut

    @classmethod
    def from_point(cls, point: ForecastPoint) -> "ForecastOut":
        return cls(
            path=point.path,
            horizon=point.horizon.label,
            as_of=format_ts(point.as_of),
            predicted_value=point.predicted_value,
            predicted_level=int(point.predicted_level),
            color=level_color(point.predicted_level),
            interval_low=point.interval[0],
            interval_high=point.interval[1],
            model=TrendModelOut(
                method=point.model.method,
                level=point.model.level,
                trend=point.model.trend,
                alpha=point.model.alpha,
                beta=point.model.beta,
                n_points=point.model.n_points,
                residual_std=point.model.residual_std,
            ),
        )


class ContextOut(BaseModel):
    ts: str
    latitude: float
    longitude: float
    outdoor_illuminance: float
    cloud_cover: float
    local_time: str

    @classmethod
    def from_record(cls, record: ContextRecord) -> "ContextOut":
        return cls(
            ts=format_ts(record.ts),
            latitude=record.latitude,
            longitude=record.longitude,
            outdoor_illuminance=record.outdoor_illuminance,
            cloud_cover=record.cloud_cover,
            local_time=record.local_time,
        )


class SlotOut(BaseModel):
    day: int
    tech: str


class WorkOrderOut(BaseModel):
    id: str
    kind: str
    path: str
    priority: int
    created_at: str
    due_by: str
    status: str
    slot: SlotOut | None = None
    completed_at: str | None = None
    trigger: dict[str, Any]

    @classmethod
    def from_order(cls, order: WorkOrder) -> "WorkOrderOut":
        return cls(
            id=order.id,
            kind=order.kind.value,
            path=order.path,
            priority=order.priority,
            created_at=format_ts(order.created_at),
            due_by=format_ts(order.due_by),
            status=order.status.value,
            slot=SlotOut(day=order.slot.day, tech=order.slot.tech) if order.slot else None,
            completed_at=format_ts(order.completed_at) if order.completed_at else None,
            trigger=order.to_json()["trigger"],
        )


class CreateOrderIn(BaseModel):
    path: str = Field(min_length=1)
    note: str = Field(default="", max_length=500)


class SlotIn(BaseModel):
    day: int = Field(ge=1)
    tech: str = Field(min_length=1)


class TransitionIn(BaseModel):
    to: Literal["scheduled", "in_progress", "done", "cancelled"]
    slot: SlotIn | None = None


class ErrorOut(BaseModel):
    error: str
    detail: str
