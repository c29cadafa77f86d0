"""Work orders: corrective, predictive and preventive maintenance.

Corrective orders react to alarms and are due within two days.
Predictive orders fire when a projected level breaches the configured
threshold while the asset is still healthy, due a lead time ahead of the
estimated crossing.  Preventive orders come off a per-asset calendar.
Only one live order may exist per asset and kind; order ids are hashes
of what triggered them, so a replayed log recreates identical books.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from datetime import datetime, timedelta
from enum import Enum
from typing import Any, Sequence

from .assets import AssetNode, HealthLevel
from .errors import DuplicateOrderError, IllegalTransitionError, UnknownOrderError
from .forecast import ForecastPoint, time_to_level
from .health import Alarm
from .store import EventLog, format_ts, parse_ts

CM_DUE_DAYS = 2
PM_DUE_DAYS = 7
PDM_LEAD_DAYS = 14


class OrderKind(str, Enum):
    CORRECTIVE = "cm"
    PREDICTIVE = "pdm"
    PREVENTIVE = "pm"


PRIORITY: dict[OrderKind, int] = {
    OrderKind.CORRECTIVE: 1,
    OrderKind.PREDICTIVE: 2,
    OrderKind.PREVENTIVE: 3,
}


class OrderStatus(str, Enum):
    OPEN = "open"
    SCHEDULED = "scheduled"
    IN_PROGRESS = "in_progress"
    DONE = "done"
    CANCELLED = "cancelled"


TERMINAL_STATUSES = {OrderStatus.DONE, OrderStatus.CANCELLED}

_LEGAL_TRANSITIONS: set[tuple[OrderStatus, OrderStatus]] = {
    (OrderStatus.OPEN, OrderStatus.SCHEDULED),
    (OrderStatus.SCHEDULED, OrderStatus.IN_PROGRESS),
    (OrderStatus.IN_PROGRESS, OrderStatus.DONE),
    (OrderStatus.OPEN, OrderStatus.CANCELLED),
    (OrderStatus.SCHEDULED, OrderStatus.CANCELLED),
}


def legal_transition(current: OrderStatus, to: OrderStatus) -> bool:
    return (current, to) in _LEGAL_TRANSITIONS


@dataclass(frozen=True)
class Slot:
    day: int  # 1-based offset from scheduling time
    tech: str

    def to_json(self) -> dict[str, Any]:
        return {"day": self.day, "tech": self.tech}


def _trigger_to_json(trigger: Any) -> dict[str, Any]:
    return dict(trigger.to_json())


@dataclass(frozen=True)
class AlarmTrigger:
    alarm_id: str
    level: int
    value: float

    def canonical(self) -> str:
        return f"alarm|{self.alarm_id}"

    def to_json(self) -> dict[str, Any]:
        return {"type": "alarm", "alarm_id": self.alarm_id, "level": self.level, "value": self.value}


@dataclass(frozen=True)
class ForecastTrigger:
    horizon: str
    predicted_value: float
    predicted_level: int
    breach_in_days: float | None
    raised_on: str  # date the daily evaluation fired

    def canonical(self) -> str:
        return f"forecast|{self.horizon}|{self.raised_on}"

    def to_json(self) -> dict[str, Any]:
        return {
            "type": "forecast",
            "horizon": self.horizon,
            "predicted_value": self.predicted_value,
            "predicted_level": self.predicted_level,
            "breach_in_days": self.breach_in_days,
            "raised_on": self.raised_on,
        }


@dataclass(frozen=True)
class CalendarTrigger:
    interval_days: int
    last_done: str | None

    def canonical(self) -> str:
        return f"calendar|{self.interval_days}|{self.last_done or 'never'}"

    def to_json(self) -> dict[str, Any]:
        return {"type": "calendar", "interval_days": self.interval_days, "last_done": self.last_done}


@dataclass(frozen=True)
class ManualTrigger:
    note: str
    requested_on: str

    def canonical(self) -> str:
        return f"manual|{self.requested_on}|{self.note}"

    def to_json(self) -> dict[str, Any]:
        return {"type": "manual", "note": self.note, "requested_on": self.requested_on}


Trigger = Any  # one of the trigger dataclasses above


def _trigger_from_json(raw: dict[str, Any]) -> Trigger:
    kind = raw.get("type")
    if kind == "alarm":
        return AlarmTrigger(raw["alarm_id"], int(raw["level"]), float(raw["value"]))
    if kind == "forecast":
        breach = raw.get("breach_in_days")
        return ForecastTrigger(
            raw["horizon"], float(raw["predicted_value"]), int(raw["predicted_level"]),
            float(breach) if breach is not None else None, raw["raised_on"],
        )
    if kind == "calendar":
        return CalendarTrigger(int(raw["interval_days"]), raw.get("last_done"))
    if kind == "manual":
        return ManualTrigger(raw.get("note", ""), raw.get("requested_on", ""))
    raise ValueError(f"unknown trigger type {kind!r}")


def order_id(kind: OrderKind, path: str, trigger: Trigger) -> str:
    seed = f"{kind.value}|{path}|{trigger.canonical()}"
    return "wo-" + hashlib.blake2s(seed.encode(), digest_size=8).hexdigest()


@dataclass(frozen=True)
class WorkOrder:
    id: str
    kind: OrderKind
    path: str
    priority: int
    created_at: datetime
    due_by: datetime
    status: OrderStatus
    trigger: Trigger
    slot: Slot | None = None
    completed_at: datetime | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "id": self.id,
            "kind": self.kind.value,
            "path": self.path,
            "priority": self.priority,
            "created_at": format_ts(self.created_at),
            "due_by": format_ts(self.due_by),
            "status": self.status.value,
        }
        if self.slot is not None:
            out["slot"] = self.slot.to_json()
        if self.completed_at is not None:
            out["completed_at"] = format_ts(self.completed_at)
        out["trigger"] = _trigger_to_json(self.trigger)
        return out

    def to_event(self) -> dict[str, Any]:
        return {"t": "workorder", **self.to_json()}

    @classmethod
    def from_json(cls, raw: dict[str, Any]) -> "WorkOrder":
        slot = raw.get("slot")
        completed = raw.get("completed_at")
        return cls(
            id=raw["id"],
            kind=OrderKind(raw["kind"]),
            path=raw["path"],
            priority=int(raw["priority"]),
            created_at=parse_ts(raw["created_at"]),
            due_by=parse_ts(raw["due_by"]),
            status=OrderStatus(raw["status"]),
            trigger=_trigger_from_json(raw["trigger"]),
            slot=Slot(int(slot["day"]), slot["tech"]) if slot else None,
            completed_at=parse_ts(completed) if completed else None,
        )


@dataclass(frozen=True)
class PmEntry:
    path: str
    interval_days: int
    last_done: datetime | None


class WorkOrderBook:
    """All orders ever raised, live ones indexed by (path, kind)."""

    def __init__(self, log: EventLog | None = None):
        self._log = log
        self._orders: dict[str, WorkOrder] = {}
        self._active: dict[tuple[str, OrderKind], str] = {}

    def apply_event(self, event: dict[str, Any]) -> bool:
        if event.get("t") != "workorder":
            return False
        self._upsert(WorkOrder.from_json(event), record=False)
        return True

    def _upsert(self, order: WorkOrder, record: bool = True) -> None:
        self._orders[order.id] = order
        key = (order.path, order.kind)
        if order.status in TERMINAL_STATUSES:
            if self._active.get(key) == order.id:
                del self._active[key]
        else:
            self._active[key] = order.id
        if record and self._log is not None:
            self._log.append(order.to_event())

    def get(self, order_id_: str) -> WorkOrder:
        try:
            return self._orders[order_id_]
        except KeyError:
            raise UnknownOrderError(f"no work order with id {order_id_!r}") from None

    def list_orders(self, status: OrderStatus | None = None) -> list[WorkOrder]:
        orders = list(self._orders.values())
        if status is not None:
            orders = [o for o in orders if o.status is status]
        return orders

    def open_orders(self) -> list[WorkOrder]:
        return self.list_orders(OrderStatus.OPEN)

    def active_for(self, path: str, kind: OrderKind) -> WorkOrder | None:
        order_id_ = self._active.get((path, kind))
        return self._orders[order_id_] if order_id_ else None

    # -- raising ----------------------------------------------------------

    def raise_cm(self, alarm: Alarm, now: datetime) -> WorkOrder | None:
        """Corrective order for an alarm; None when one is already live."""
        if self.active_for(alarm.path, OrderKind.CORRECTIVE) is not None:
            return None
        trigger = AlarmTrigger(alarm.id, int(alarm.level), alarm.value)
        order = WorkOrder(
            id=order_id(OrderKind.CORRECTIVE, alarm.path, trigger),
            kind=OrderKind.CORRECTIVE,
            path=alarm.path,
            priority=PRIORITY[OrderKind.CORRECTIVE],
            created_at=now,
            due_by=now + timedelta(days=CM_DUE_DAYS),
            status=OrderStatus.OPEN,
            trigger=trigger,
        )
        self._upsert(order)
        return order

    def raise_manual(self, path: str, note: str, now: datetime) -> WorkOrder:
        """Operator-requested corrective order; duplicates are an error."""
        if self.active_for(path, OrderKind.CORRECTIVE) is not None:
            raise DuplicateOrderError(f"a corrective order is already live for {path!r}")
        trigger = ManualTrigger(note=note, requested_on=format_ts(now))
        order = WorkOrder(
            id=order_id(OrderKind.CORRECTIVE, path, trigger),
            kind=OrderKind.CORRECTIVE,
            path=path,
            priority=PRIORITY[OrderKind.CORRECTIVE],
            created_at=now,
            due_by=now + timedelta(days=CM_DUE_DAYS),
            status=OrderStatus.OPEN,
            trigger=trigger,
        )
        self._upsert(order)
        return order

    def raise_pdm(
        self,
        point: ForecastPoint,
        current: HealthLevel,
        pdm_level: int,
        node: AssetNode,
        now: datetime,
        lead_days: int = PDM_LEAD_DAYS,
    ) -> WorkOrder | None:
        """Predictive order when the projection breaches while health is still good.

        Due date backs off a lead time from the estimated crossing (or the
        horizon if the crossing estimate is unavailable), floored at now.
        """
        if int(point.predicted_level) > pdm_level or int(current) < pdm_level + 1:
            return None
        if self.active_for(point.path, OrderKind.PREDICTIVE) is not None:
            return None
        breach = time_to_level(point.model, node, pdm_level)
        cap_days = float(point.horizon.days) if breach is None else min(float(point.horizon.days), breach)
        due = now + timedelta(days=cap_days) - timedelta(days=lead_days)
        due = max(due, now)
        trigger = ForecastTrigger(
            horizon=point.horizon.label,
            predicted_value=point.predicted_value,
            predicted_level=int(point.predicted_level),
            breach_in_days=breach,
            raised_on=format_ts(now),
        )
        order = WorkOrder(
            id=order_id(OrderKind.PREDICTIVE, point.path, trigger),
            kind=OrderKind.PREDICTIVE,
            path=point.path,
            priority=PRIORITY[OrderKind.PREDICTIVE],
            created_at=now,
            due_by=due,
            status=OrderStatus.OPEN,
            trigger=trigger,
        )
        self._upsert(order)
        return order

    def raise_pm(self, entries: Sequence[PmEntry], now: datetime) -> list[WorkOrder]:
        """Preventive orders for every calendar entry past its interval."""
        out: list[WorkOrder] = []
        for entry in sorted(entries, key=lambda e: e.path):
            if entry.last_done is not None and now - entry.last_done < timedelta(days=entry.interval_days):
                continue
            if self.active_for(entry.path, OrderKind.PREVENTIVE) is not None:
                continue
            trigger = CalendarTrigger(
                interval_days=entry.interval_days,
                last_done=format_ts(entry.last_done) if entry.last_done else None,
            )
            order = WorkOrder(
                id=order_id(OrderKind.PREVENTIVE, entry.path, trigger),
                kind=OrderKind.PREVENTIVE,
                path=entry.path,
                priority=PRIORITY[OrderKind.PREVENTIVE],
                created_at=now,
                due_by=now + timedelta(days=PM_DUE_DAYS),
                status=OrderStatus.OPEN,
                trigger=trigger,
            )
            self._upsert(order)
            out.append(order)
        return out

    # -- lifecycle ----------------------------------------------------------

    def transition(
        self,
        order_id_: str,
        to: OrderStatus,
        slot: Slot | None = None,
        at: datetime | None = None,
    ) -> WorkOrder:
        order = self.get(order_id_)
        if not legal_transition(order.status, to):
            raise IllegalTransitionError(
                f"{order.id}: cannot move {order.status.value} -> {to.value}"
            )
        if to is OrderStatus.SCHEDULED:
            if slot is None:
                raise IllegalTransitionError(f"{order.id}: scheduling requires a slot")
        else:
            slot = order.slot
        completed = order.completed_at
        if to is OrderStatus.DONE:
            if at is None:
                raise ValueError(f"{order.id}: completing an order requires a timestamp")
            completed = at
        updated = replace(order, status=to, slot=slot, completed_at=completed)
        self._upsert(updated)
        return updated


# -- scheduling -------------------------------------------------------------


@dataclass(frozen=True)
class ResourceCalendar:
    technicians: tuple[str, ...]
    capacity_per_day: int
    horizon_days: int


@dataclass
class SchedulePlan:
    assignments: list[tuple[str, Slot]] = field(default_factory=list)
    overflow: list[str] = field(default_factory=list)


def schedule(orders: Sequence[WorkOrder], calendar: ResourceCalendar, now: datetime) -> SchedulePlan:
    """Greedy placement of open orders into day/technician slots.

    Orders go in (priority, due date, id) sequence; each takes the first
    day with spare capacity, rotating technicians within the day.  What
    does not fit inside the horizon is reported as overflow and stays
    open for the next planning round.
    """
    technicians = tuple(sorted(calendar.technicians))
    plan = SchedulePlan()
    if not technicians or calendar.capacity_per_day <= 0 or calendar.horizon_days <= 0:
        plan.overflow = [o.id for o in sorted(orders, key=lambda o: o.id) if o.status is OrderStatus.OPEN]
        return plan

    queue = sorted(
        (o for o in orders if o.status is OrderStatus.OPEN),
        key=lambda o: (o.priority, o.due_by, o.id),
    )
    load: dict[tuple[int, str], int] = {}
    day_total: dict[int, int] = {}
    day_capacity = calendar.capacity_per_day * len(technicians)

    for order in queue:
        placed = False
        for day in range(1, calendar.horizon_days + 1):
            assigned = day_total.get(day, 0)
            if assigned >= day_capacity:
                continue
            start = assigned % len(technicians)
            for probe in range(len(technicians)):
                tech = technicians[(start + probe) % len(technicians)]
                if load.get((day, tech), 0) < calendar.capacity_per_day:
                    load[(day, tech)] = load.get((day, tech), 0) + 1
                    day_total[day] = assigned + 1
                    plan.assignments.append((order.id, Slot(day=day, tech=tech)))
                    placed = True
                    break
            if placed:
                break
        if not placed:
            plan.overflow.append(order.id)
    return plan
