"""Service configuration loaded from one JSON file.

Relative paths inside the file resolve against the file's own directory,
so a config can travel with its asset tree and data log.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from pathlib import Path
from typing import Any

from .errors import ConfigError
from .forecast import DEFAULT_ALPHA, DEFAULT_BETA
from .health import DEFAULT_ALARM_LEVEL, DiagnosisRules
from .rollup import Critical, Policy, PolicyStack, WeightedAverage
from .store import parse_ts
from .workorders import PDM_LEAD_DAYS, PmEntry, ResourceCalendar


@dataclass(frozen=True)
class ClockConfig:
    mode: str = "realtime"  # "realtime" or "simulated"
    start: datetime | None = None
    speedup: float = 1.0


def _parse_policy(raw: Any, layer: str) -> Policy:
    if raw == "critical":
        return Critical()
    if raw == "weighted":
        return WeightedAverage()
    if isinstance(raw, dict) and set(raw) == {"weighted"}:
        weights = raw["weighted"]
        if not isinstance(weights, dict) or not weights:
            raise ConfigError(f"{layer}: explicit weights must be a non-empty object")
        return WeightedAverage({str(k): float(v) for k, v in weights.items()})
    raise ConfigError(f"{layer}: policy must be 'critical', 'weighted', or {{'weighted': {{...}}}}")


@dataclass
class ServiceConfig:
    asset_config_path: Path
    data_log_path: Path
    host: str = "127.0.0.1"
    port: int = 8000
    evaluation_interval: timedelta = timedelta(minutes=15)
    alarm_level: int = DEFAULT_ALARM_LEVEL
    pdm_level: int = 2
    pdm_lead_days: int = PDM_LEAD_DAYS
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    policies: PolicyStack = field(default_factory=PolicyStack)
    calendar: ResourceCalendar = ResourceCalendar(("tech-1",), 2, 14)
    pm_entries: list[PmEntry] = field(default_factory=list)
    clock: ClockConfig = ClockConfig()
    diagnosis: DiagnosisRules = DiagnosisRules()
    static_dir: Path | None = None

    def load_tree_config(self) -> dict[str, Any]:
        try:
            return json.loads(self.asset_config_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read asset config {self.asset_config_path}: {exc}") from exc

    @classmethod
    def from_dict(cls, raw: dict[str, Any], base_dir: Path) -> "ServiceConfig":
        try:
            asset_path = (base_dir / raw["asset_config"]).resolve()
            data_path = (base_dir / raw["data_log"]).resolve()
        except KeyError as exc:
            raise ConfigError(f"service config missing required field {exc}") from None
        if not asset_path.exists():
            raise ConfigError(f"asset config not found: {asset_path}")

        config = cls(asset_config_path=asset_path, data_log_path=data_path)
        config.host = str(raw.get("host", config.host))
        config.port = int(raw.get("port", config.port))
        minutes = float(raw.get("evaluation_interval_minutes", 15))
        if minutes <= 0:
            raise ConfigError("evaluation_interval_minutes must be positive")
        config.evaluation_interval = timedelta(minutes=minutes)
        config.alarm_level = int(raw.get("alarm_level", config.alarm_level))
        config.pdm_level = int(raw.get("pdm_level", config.pdm_level))
        config.pdm_lead_days = int(raw.get("pdm_lead_days", config.pdm_lead_days))
        if not 1 <= config.alarm_level <= 5 or not 1 <= config.pdm_level <= 4:
            raise ConfigError("alarm_level must be 1..5 and pdm_level 1..4")
        if config.pdm_lead_days < 0:
            raise ConfigError("pdm_lead_days cannot be negative")

        forecast_raw = raw.get("forecast", {})
        config.alpha = float(forecast_raw.get("alpha", config.alpha))
        config.beta = float(forecast_raw.get("beta", config.beta))
        if not 0 < config.alpha < 1 or not 0 < config.beta < 1:
            raise ConfigError("forecast alpha and beta must sit strictly between 0 and 1")

        policies_raw = raw.get("policies", {})
        if policies_raw:
            stack = PolicyStack()
            for layer in (
                "parameter_to_area",
                "area_to_floor",
                "floor_to_subsystem",
                "subsystem_to_building",
            ):
                if layer in policies_raw:
                    setattr(stack, layer, _parse_policy(policies_raw[layer], layer))
            config.policies = stack

        calendar_raw = raw.get("calendar", {})
        if calendar_raw:
            technicians = tuple(str(t) for t in calendar_raw.get("technicians", ()))
            capacity = int(calendar_raw.get("capacity_per_day", 2))
            horizon = int(calendar_raw.get("horizon_days", 14))
            if not technicians or capacity <= 0 or horizon <= 0:
                raise ConfigError("calendar needs technicians and positive capacity and horizon")
            config.calendar = ResourceCalendar(technicians, capacity, horizon)

        entries = []
        for entry in raw.get("pm", []):
            interval = int(entry["interval_days"])
            if interval <= 0:
                raise ConfigError(f"pm entry {entry.get('path')}: interval_days must be positive")
            last_done = parse_ts(entry["last_done"]) if entry.get("last_done") else None
            entries.append(PmEntry(path=str(entry["path"]), interval_days=interval, last_done=last_done))
        config.pm_entries = entries

        clock_raw = raw.get("clock", {})
        if clock_raw:
            mode = clock_raw.get("mode", "realtime")
            if mode not in ("realtime", "simulated"):
                raise ConfigError(f"unknown clock mode {mode!r}")
            start = parse_ts(clock_raw["start"]) if clock_raw.get("start") else None
            speedup = float(clock_raw.get("speedup", 1.0))
            if speedup <= 0:
                raise ConfigError("clock speedup must be positive")
            config.clock = ClockConfig(mode=mode, start=start, speedup=speedup)

        if raw.get("static_dir"):
            config.static_dir = (base_dir / raw["static_dir"]).resolve()

        diagnosis_raw = raw.get("diagnosis", {})
        if diagnosis_raw:
            known = {f.name for f in dataclasses.fields(DiagnosisRules)}
            unknown = set(diagnosis_raw) - known
            if unknown:
                raise ConfigError(f"unknown diagnosis settings: {sorted(unknown)}")
            config.diagnosis = dataclasses.replace(DiagnosisRules(), **diagnosis_raw)

        return config

    @classmethod
    def load(cls, path: Path | str) -> "ServiceConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read service config {path}: {exc}") from exc
        return cls.from_dict(raw, path.parent)
