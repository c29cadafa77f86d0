"""Append-only telemetry log and the in-memory index built from it.

Every fact the system records — readings, outdoor context, alarms, work
orders — is one JSON object per line in a single log file.  Key order and
float formatting are fixed so that writing an event and reading it back
reproduces the line byte for byte, which keeps replays and golden-file
comparisons honest.
"""

from __future__ import annotations

import json
import math
import threading
from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Iterator

from .errors import NonFiniteError


def format_ts(ts: datetime) -> str:
    """UTC, second precision, trailing Z."""
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc).replace(microsecond=0).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_ts(raw: str) -> datetime:
    return datetime.fromisoformat(raw.replace("Z", "+00:00")).astimezone(timezone.utc)


def encode_event(event: dict[str, Any]) -> str:
    """One log line, minus newline. Key order is insertion order."""
    return json.dumps(event, separators=(",", ":"))


def decode_event(line: str) -> dict[str, Any]:
    return json.loads(line)


@dataclass(frozen=True)
class ParameterReading:
    ts: datetime
    path: str
    value: float
    unit: str = ""

    def to_event(self) -> dict[str, Any]:
        return {
            "t": "reading",
            "ts": format_ts(self.ts),
            "path": self.path,
            "value": self.value,
            "unit": self.unit,
        }

    @classmethod
    def from_event(cls, event: dict[str, Any]) -> "ParameterReading":
        return cls(
            ts=parse_ts(event["ts"]),
            path=event["path"],
            value=float(event["value"]),
            unit=event.get("unit", ""),
        )


@dataclass(frozen=True)
class ContextRecord:
    """Outdoor conditions shared by the whole building."""

    ts: datetime
    latitude: float
    longitude: float
    outdoor_illuminance: float
    cloud_cover: float
    local_time: str

    def to_event(self) -> dict[str, Any]:
        return {
            "t": "context",
            "ts": format_ts(self.ts),
            "lat": self.latitude,
            "lon": self.longitude,
            "oi": self.outdoor_illuminance,
            "cc": self.cloud_cover,
            "local": self.local_time,
        }

    @classmethod
    def from_event(cls, event: dict[str, Any]) -> "ContextRecord":
        return cls(
            ts=parse_ts(event["ts"]),
            latitude=float(event["lat"]),
            longitude=float(event["lon"]),
            outdoor_illuminance=float(event["oi"]),
            cloud_cover=float(event["cc"]),
            local_time=event["local"],
        )


class HistoryWindow(Enum):
    """Fixed aggregation windows offered by the history views."""

    H12 = ("h12", timedelta(hours=12), timedelta(hours=1))
    H48 = ("h48", timedelta(hours=48), timedelta(hours=1))
    WEEK = ("week", timedelta(days=7), timedelta(days=1))
    MONTH = ("month", timedelta(days=30), timedelta(days=1))
    YEAR = ("year", timedelta(weeks=52), timedelta(weeks=1))

    def __init__(self, label: str, span: timedelta, bucket: timedelta):
        self.label = label
        self.span = span
        self.bucket = bucket

    @property
    def bucket_count(self) -> int:
        return self.span // self.bucket

    @classmethod
    def from_label(cls, label: str) -> "HistoryWindow":
        for member in cls:
            if member.label == label:
                return member
        raise ValueError(f"unknown history window {label!r}")


@dataclass(frozen=True)
class Bucket:
    start: datetime
    mean: float | None
    count: int


class EventLog:
    """Append-only JSON-Lines file. One writer, many readers.

    ``observer`` (when set) sees every appended event; the runtime uses
    it to track the newest event timestamp without a second code path.
    """

    def __init__(self, path: Path | None):
        self.path = path
        self.observer = None
        self._lock = threading.Lock()
        self._handle = None
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)

    def read_existing(self) -> Iterator[dict[str, Any]]:
        if self.path is None or not self.path.exists():
            return
        with self.path.open("r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    yield decode_event(line)
                except json.JSONDecodeError as exc:
                    raise ValueError(f"{self.path}:{lineno}: corrupt event line") from exc

    def append(self, event: dict[str, Any]) -> None:
        if self.path is not None:
            with self._lock:
                if self._handle is None:
                    self._handle = self.path.open("a", encoding="utf-8")
                self._handle.write(encode_event(event) + "\n")
                self._handle.flush()
        if self.observer is not None:
            self.observer(event)

    def close(self) -> None:
        with self._lock:
            if self._handle is not None:
                self._handle.close()
                self._handle = None


class _Series:
    __slots__ = ("order", "by_ts")

    def __init__(self) -> None:
        self.order: list[datetime] = []
        self.by_ts: dict[datetime, ParameterReading] = {}

    def put(self, reading: ParameterReading) -> None:
        if reading.ts not in self.by_ts:
            insort(self.order, reading.ts)
        # Same timestamp and path: the later write wins.
        self.by_ts[reading.ts] = reading


class TelemetryStore:
    """Readings and context indexed by path and timestamp."""

    def __init__(self, log: EventLog | None = None):
        self._log = log
        self._lock = threading.RLock()
        self._series: dict[str, _Series] = {}
        self._context_order: list[datetime] = []
        self._context_by_ts: dict[datetime, ContextRecord] = {}

    # -- ingest ---------------------------------------------------------

    def ingest_reading(self, reading: ParameterReading, record: bool = True) -> None:
        if not math.isfinite(reading.value):
            raise NonFiniteError(f"reading for {reading.path} is not finite: {reading.value!r}")
        reading = ParameterReading(
            ts=reading.ts.astimezone(timezone.utc).replace(microsecond=0),
            path=reading.path,
            value=reading.value,
            unit=reading.unit,
        )
        with self._lock:
            self._series.setdefault(reading.path, _Series()).put(reading)
        if record and self._log is not None:
            self._log.append(reading.to_event())

    def ingest_context(self, record_: ContextRecord, record: bool = True) -> None:
        ts = record_.ts.astimezone(timezone.utc).replace(microsecond=0)
        if ts != record_.ts:
            record_ = ContextRecord(
                ts, record_.latitude, record_.longitude,
                record_.outdoor_illuminance, record_.cloud_cover, record_.local_time,
            )
        with self._lock:
            if ts not in self._context_by_ts:
                insort(self._context_order, ts)
            self._context_by_ts[ts] = record_
        if record and self._log is not None:
            self._log.append(record_.to_event())

    def apply_event(self, event: dict[str, Any]) -> bool:
        """Replay one decoded log line. True when it belonged to the store."""
        kind = event.get("t")
        if kind == "reading":
            self.ingest_reading(ParameterReading.from_event(event), record=False)
            return True
        if kind == "context":
            self.ingest_context(ContextRecord.from_event(event), record=False)
            return True
        return False

    # -- point queries ----------------------------------------------------

    def paths(self) -> list[str]:
        with self._lock:
            return sorted(self._series)

    def latest(self, path: str) -> ParameterReading | None:
        with self._lock:
            series = self._series.get(path)
            if not series or not series.order:
                return None
            return series.by_ts[series.order[-1]]

    def latest_at(self, path: str, at: datetime) -> ParameterReading | None:
        """Most recent reading with ts <= at."""
        with self._lock:
            series = self._series.get(path)
            if not series:
                return None
            idx = bisect_right(series.order, at)
            if idx == 0:
                return None
            return series.by_ts[series.order[idx - 1]]

    def last_n_at(self, path: str, at: datetime, n: int) -> list[ParameterReading]:
        """Up to n most recent readings with ts <= at, ascending."""
        with self._lock:
            series = self._series.get(path)
            if not series:
                return []
            idx = bisect_right(series.order, at)
            return [series.by_ts[ts] for ts in series.order[max(0, idx - n):idx]]

    def readings_between(self, path: str, start: datetime, end: datetime) -> list[ParameterReading]:
        """Readings with start <= ts < end, ascending."""
        with self._lock:
            series = self._series.get(path)
            if not series:
                return []
            lo = bisect_left(series.order, start)
            hi = bisect_left(series.order, end)
            return [series.by_ts[ts] for ts in series.order[lo:hi]]

    def span(self) -> tuple[datetime, datetime] | None:
        """Earliest and latest reading timestamps over every path."""
        with self._lock:
            first: datetime | None = None
            last: datetime | None = None
            for series in self._series.values():
                if not series.order:
                    continue
                if first is None or series.order[0] < first:
                    first = series.order[0]
                if last is None or series.order[-1] > last:
                    last = series.order[-1]
            if first is None or last is None:
                return None
            return first, last

    def latest_context(self, at: datetime | None = None) -> ContextRecord | None:
        with self._lock:
            if not self._context_order:
                return None
            if at is None:
                return self._context_by_ts[self._context_order[-1]]
            idx = bisect_right(self._context_order, at)
            if idx == 0:
                return None
            return self._context_by_ts[self._context_order[idx - 1]]

    # -- aggregation ------------------------------------------------------

    def window_series(self, path: str, window: HistoryWindow, end: datetime) -> list[Bucket]:
        """Bucket means over [end - span, end), one bucket per step.

        Means are plain sums over readings in ascending timestamp order
        divided by the count, so results are reproducible exactly.
        """
        start = end - window.span
        readings = self.readings_between(path, start, end)
        sums = [0.0] * window.bucket_count
        counts = [0] * window.bucket_count
        for reading in readings:
            idx = (reading.ts - start) // window.bucket
            sums[idx] += reading.value
            counts[idx] += 1
        out: list[Bucket] = []
        for i in range(window.bucket_count):
            mean = sums[i] / counts[i] if counts[i] else None
            out.append(Bucket(start=start + i * window.bucket, mean=mean, count=counts[i]))
        return out

    def daily_means(self, path: str, end: datetime, days: int) -> list[tuple[int, float]]:
        """(day offset, mean) per non-empty day over [end - days, end)."""
        start = end - timedelta(days=days)
        readings = self.readings_between(path, start, end)
        sums = [0.0] * days
        counts = [0] * days
        for reading in readings:
            idx = (reading.ts - start) // timedelta(days=1)
            sums[idx] += reading.value
            counts[idx] += 1
        return [(i, sums[i] / counts[i]) for i in range(days) if counts[i]]
