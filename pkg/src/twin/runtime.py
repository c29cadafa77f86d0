"""The live twin: one event log in, evaluated state out.

A runtime owns the asset tree, the telemetry store, the alarm registry
and the work-order book, all rebuilt from the event log on startup so a
restart lands in exactly the state the log describes.  ``evaluate_once``
runs one pass of the pipeline: snapshot every area, detect and diagnose
new alarms, raise corrective orders, refresh forecasts and the
preventive calendar once per day, then push open orders through the
scheduler.  Everything derived is appended to the same log, which makes
a batch replay of recorded telemetry reproduce the service state
byte for byte.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from typing import Any, Callable

from .assets import AssetNode, AssetTree, NodeKind, build_tree, classify_value
from .config import ServiceConfig
from .errors import EmptySeriesError, PathNotFoundError
from .forecast import ForecastHorizon, forecast_level
from .health import (
    Alarm,
    AreaSnapshot,
    Diagnosis,
    detect_alarms,
    diagnose,
    snapshot_area,
)
from .rollup import IntegratedStatus, building_status
from .store import EventLog, ParameterReading, TelemetryStore, parse_ts
from .workorders import (
    OrderKind,
    OrderStatus,
    PmEntry,
    Slot,
    WorkOrder,
    WorkOrderBook,
    schedule,
)

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


@dataclass
class EvaluationTick:
    ts: datetime
    new_alarms: list[Alarm] = field(default_factory=list)
    diagnoses: dict[str, Diagnosis] = field(default_factory=dict)
    new_orders: list[WorkOrder] = field(default_factory=list)
    scheduled: list[tuple[str, Slot]] = field(default_factory=list)
    overflow: list[str] = field(default_factory=list)
    forecasts_refreshed: bool = False

    def to_json(self) -> dict[str, Any]:
        from .store import format_ts

        return {
            "type": "tick",
            "ts": format_ts(self.ts),
            "alarms": [a.id for a in self.new_alarms],
            "orders": [o.id for o in self.new_orders],
            "scheduled": [{"id": i, "day": s.day, "tech": s.tech} for i, s in self.scheduled],
            "overflow": list(self.overflow),
            "forecasts_refreshed": self.forecasts_refreshed,
        }


class TwinRuntime:
    def __init__(self, config: ServiceConfig, tree_config: dict[str, Any] | None = None):
        self.config = config
        self.tree: AssetTree = build_tree(tree_config or config.load_tree_config())
        self.log = EventLog(config.data_log_path)
        self.store = TelemetryStore(self.log)
        self.book = WorkOrderBook(self.log)
        self.alarms: dict[str, Alarm] = {}
        self._pm_last_done: dict[str, datetime | None] = {
            entry.path: entry.last_done for entry in config.pm_entries
        }
        self._last_event_ts: datetime | None = None
        self._last_forecast_day: date | None = None
        self._lock = threading.RLock()
        self._tick_listeners: list[Callable[[EvaluationTick], None]] = []

        for event in self.log.read_existing():
            self._dispatch(event)
        # From here on every append, ours or the store's, moves as_of.
        self.log.observer = self._observe_event

    # -- state reconstruction ------------------------------------------------

    def _observe_event(self, event: dict[str, Any]) -> None:
        ts = self._event_ts(event)
        if ts is not None and (self._last_event_ts is None or ts > self._last_event_ts):
            self._last_event_ts = ts

    @staticmethod
    def _event_ts(event: dict[str, Any]) -> datetime | None:
        stamp = event.get("ts") or event.get("completed_at") or event.get("created_at")
        return parse_ts(stamp) if stamp else None

    def _dispatch(self, event: dict[str, Any]) -> None:
        if self.store.apply_event(event):
            pass
        elif self.book.apply_event(event):
            self._note_pm_completion(self.book.get(event["id"]))
        elif event.get("t") == "alarm":
            alarm = Alarm.from_event(event)
            self.alarms[alarm.id] = alarm
        self._observe_event(event)

    def _note_pm_completion(self, order: WorkOrder) -> None:
        if (
            order.kind is OrderKind.PREVENTIVE
            and order.status is OrderStatus.DONE
            and order.completed_at is not None
        ):
            previous = self._pm_last_done.get(order.path)
            if previous is None or order.completed_at > previous:
                self._pm_last_done[order.path] = order.completed_at

    # -- ingest ----------------------------------------------------------------

    def ingest_reading(self, reading: ParameterReading) -> None:
        node = self.tree.resolve(reading.path)  # reject unknown paths at the door
        if node.kind is not NodeKind.PARAMETER:
            raise PathNotFoundError(f"{reading.path!r} is not a measured parameter")
        self.store.ingest_reading(reading)

    # -- views -------------------------------------------------------------

    @property
    def as_of(self) -> datetime:
        with self._lock:
            return self._last_event_ts or _EPOCH

    def status(self, at: datetime | None = None) -> IntegratedStatus:
        with self._lock:
            anchor = at or self.as_of
            return building_status(
                self.tree, self.store, self.config.policies, anchor,
                alpha=self.config.alpha, beta=self.config.beta,
            )

    def snapshot_nodes(self) -> list[AssetNode]:
        """User areas plus any subsystem carrying parameters directly."""
        nodes = []
        for node in self.tree.iter_nodes():
            if node.kind is NodeKind.USER_AREA:
                nodes.append(node)
            elif node.kind is NodeKind.SUBSYSTEM and node.children and all(
                child.kind is NodeKind.PARAMETER for child in node.children
            ):
                nodes.append(node)
        return nodes

    def area_snapshot(self, path: str, at: datetime | None = None) -> AreaSnapshot:
        with self._lock:
            return snapshot_area(
                self.tree, self.store, path, at or self.as_of,
                policy=self.config.policies.parameter_to_area,
            )

    def diagnose_alarm(self, alarm: Alarm) -> Diagnosis:
        with self._lock:
            return diagnose(self.tree, self.store, alarm, self.config.diagnosis)

    # -- evaluation -----------------------------------------------------------

    def evaluate_once(self, ts: datetime) -> EvaluationTick:
        with self._lock:
            tick = self._evaluate_locked(ts)
        for listener in list(self._tick_listeners):
            listener(tick)
        return tick

    def _evaluate_locked(self, ts: datetime) -> EvaluationTick:
        tick = EvaluationTick(ts=ts)
        config = self.config

        for node in self.snapshot_nodes():
            snapshot = snapshot_area(
                self.tree, self.store, node.path, ts, policy=config.policies.parameter_to_area
            )
            for alarm in detect_alarms(snapshot, config.alarm_level):
                if alarm.id in self.alarms:
                    continue
                self.alarms[alarm.id] = alarm
                self.log.append(alarm.to_event())
                tick.new_alarms.append(alarm)
                tick.diagnoses[alarm.id] = diagnose(self.tree, self.store, alarm, config.diagnosis)
                order = self.book.raise_cm(alarm, now=ts)
                if order is not None:
                    tick.new_orders.append(order)

        day = ts.astimezone(timezone.utc).date()
        if self._last_forecast_day is None or day > self._last_forecast_day:
            self._last_forecast_day = day
            tick.forecasts_refreshed = True
            self._refresh_predictions(ts, tick)
            entries = [
                PmEntry(e.path, e.interval_days, self._pm_last_done.get(e.path))
                for e in config.pm_entries
            ]
            tick.new_orders.extend(self.book.raise_pm(entries, now=ts))

        plan = schedule(self.book.open_orders(), config.calendar, now=ts)
        for order_id_, slot in plan.assignments:
            self.book.transition(order_id_, OrderStatus.SCHEDULED, slot=slot, at=ts)
            tick.scheduled.append((order_id_, slot))
        tick.overflow = plan.overflow
        return tick

    def _refresh_predictions(self, ts: datetime, tick: EvaluationTick) -> None:
        config = self.config
        for parameter in self.tree.parameters():
            latest = self.store.latest_at(parameter.path, ts)
            if latest is None:
                continue
            current = classify_value(parameter.direction, parameter.bands, latest.value)  # type: ignore[arg-type]
            if int(current) < config.pdm_level + 1:
                continue
            for horizon in (ForecastHorizon.M3, ForecastHorizon.M6):
                try:
                    point = forecast_level(
                        self.tree, self.store, parameter.path, horizon,
                        at=ts, alpha=config.alpha, beta=config.beta,
                    )
                except EmptySeriesError:
                    break
                order = self.book.raise_pdm(
                    point, current, config.pdm_level,
                    node=parameter, now=ts, lead_days=config.pdm_lead_days,
                )
                if order is not None:
                    tick.new_orders.append(order)
                    break

    def replay(self, interval=None) -> list[EvaluationTick]:
        """Run the evaluation loop over the recorded telemetry span."""
        span = self.store.span()
        if span is None:
            return []
        step = interval or self.config.evaluation_interval
        ticks: list[EvaluationTick] = []
        cursor, end = span
        while cursor <= end:
            ticks.append(self.evaluate_once(cursor))
            cursor = cursor + step
        return ticks

    # -- transitions --------------------------------------------------------

    def transition_order(
        self, order_id_: str, to: OrderStatus, slot: Slot | None = None, at: datetime | None = None
    ) -> WorkOrder:
        with self._lock:
            order = self.book.transition(order_id_, to, slot=slot, at=at or self.as_of)
            self._note_pm_completion(order)
            return order

    # -- tick listeners --------------------------------------------------------

    def on_tick(self, listener: Callable[[EvaluationTick], None]) -> Callable[[], None]:
        self._tick_listeners.append(listener)

        def unsubscribe() -> None:
            if listener in self._tick_listeners:
                self._tick_listeners.remove(listener)

        return unsubscribe

    def close(self) -> None:
        self.log.close()
