"""Builders for the bundled demo: a three-floor library with nine user
areas, ten lighting parameters each, and small HVAC and fire subsystems
tracked through one synthetic health index apiece.

``python -m twin.demo <dir>`` writes the demo config files.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path
from typing import Any

# LED output is commonly rated L70: 70 % of initial flux after 50k hours.
RATED_LIFE_HOURS = 50_000.0
L70_DECAY_PER_HOUR = math.log(1 / 0.7) / RATED_LIFE_HOURS


def default_parameter_set() -> list[dict[str, Any]]:
    """The ten measured lighting parameters every user area carries."""
    return [
        {
            "id": "illuminance", "kind": "parameter", "display_name": "Illuminance",
            "unit": "lux", "direction": "higher_is_better",
            "bands": {"edges": [100, 300, 450, 500]}, "domain": [0, 2000],
        },
        {
            "id": "uniformity", "kind": "parameter", "display_name": "Uniformity",
            "unit": "", "direction": "higher_is_better",
            "bands": {"edges": [0.2, 0.4, 0.5, 0.6]}, "domain": [0, 1],
        },
        {
            "id": "cct", "kind": "parameter", "display_name": "Colour temperature",
            "unit": "K", "direction": "banded",
            "bands": {"edges": [1500, 1000, 600, 300], "target": 4000}, "domain": [1000, 10000],
        },
        {
            "id": "cri", "kind": "parameter", "display_name": "Colour rendering",
            "unit": "", "direction": "higher_is_better",
            "bands": {"edges": [60, 70, 80, 90]}, "domain": [0, 100],
        },
        {
            "id": "ugr", "kind": "parameter", "display_name": "Glare rating",
            "unit": "", "direction": "lower_is_better",
            "bands": {"edges": [28, 25, 22, 19]}, "domain": [0, 40],
        },
        {
            "id": "flicker", "kind": "parameter", "display_name": "Flicker",
            "unit": "%", "direction": "lower_is_better",
            "bands": {"edges": [20, 10, 5, 2]}, "domain": [0, 100],
        },
        {
            "id": "melanopic-edi", "kind": "parameter", "display_name": "Melanopic EDI",
            "unit": "lux", "direction": "higher_is_better",
            "bands": {"edges": [75, 150, 250, 325]}, "domain": [0, 2000],
        },
        {
            "id": "power-draw", "kind": "parameter", "display_name": "Power draw",
            "unit": "W", "direction": "lower_is_better",
            "bands": {"edges": [1500, 1200, 1000, 800]}, "domain": [0, 5000],
        },
        {
            "id": "burning-hours", "kind": "parameter", "display_name": "Burning hours",
            "unit": "h", "direction": "lower_is_better",
            "bands": {"edges": [50000, 40000, 30000, 20000]}, "domain": [0, 200000],
        },
        {
            "id": "driver-temp", "kind": "parameter", "display_name": "Driver temperature",
            "unit": "C", "direction": "lower_is_better",
            "bands": {"edges": [85, 75, 65, 55]}, "domain": [-20, 150],
        },
    ]


def _synthetic_health(parameter_id: str, name: str) -> dict[str, Any]:
    return {
        "id": parameter_id, "kind": "parameter", "display_name": name,
        "unit": "", "direction": "higher_is_better",
        "bands": {"edges": [1, 2, 3, 4]}, "domain": [0, 5],
    }


def _area(area_id: str, name: str, cil: int) -> dict[str, Any]:
    return {"id": area_id, "kind": "user_area", "display_name": name, "cil": cil}


def demo_building_config() -> dict[str, Any]:
    return {
        "parameter_set": default_parameter_set(),
        "building": {
            "id": "library",
            "kind": "building",
            "display_name": "Central Library",
            "children": [
                {
                    "id": "lighting",
                    "kind": "subsystem",
                    "display_name": "Lighting",
                    "children": [
                        {
                            "id": "floor-1", "kind": "floor", "display_name": "Floor 1",
                            "children": [
                                _area("adult-reading", "Adult reading room", 2),
                                _area("book-return", "Book return", 4),
                                _area("entrance-hall", "Entrance hall", 3),
                            ],
                        },
                        {
                            "id": "floor-2", "kind": "floor", "display_name": "Floor 2",
                            "children": [
                                _area("book-reserve", "Book reserve", 1),
                                _area("study-carrels", "Study carrels", 2),
                                _area("periodicals", "Periodicals", 3),
                            ],
                        },
                        {
                            "id": "floor-3", "kind": "floor", "display_name": "Floor 3",
                            "children": [
                                _area("archives", "Archives", 2),
                                _area("media-lab", "Media lab", 3),
                                _area("quiet-reading", "Quiet reading", 2),
                            ],
                        },
                    ],
                },
                {
                    "id": "hvac",
                    "kind": "subsystem",
                    "display_name": "HVAC",
                    "children": [_synthetic_health("hvac-health", "HVAC health index")],
                },
                {
                    "id": "fire",
                    "kind": "subsystem",
                    "display_name": "Fire safety",
                    "children": [_synthetic_health("fire-health", "Fire safety health index")],
                },
            ],
        },
    }


def demo_scenario_config() -> dict[str, Any]:
    """Thirty days of healthy operation with two injected faults."""
    return {
        "asset_config": "demo-building.json",
        "seed": 20250101,
        "start": "2025-01-01T00:00:00Z",
        "days": 30,
        "cadence_minutes": 60,
        "context": {
            "latitude": 60.61,
            "longitude": 15.63,
            "utc_offset_hours": 1.0,
            "peak_lux": 10000,
            "sunrise_hour": 8.5,
            "sunset_hour": 15.5,
        },
        "processes": {
            "illuminance": {"initial": 520, "decay_per_hour": L70_DECAY_PER_HOUR, "sigma": 4.0},
            "uniformity": {"initial": 0.62, "sigma": 0.01},
            "cct": {"initial": 4005, "sigma": 25.0},
            "cri": {"initial": 92, "sigma": 0.5},
            "ugr": {"initial": 17.5, "sigma": 0.4},
            "flicker": {"initial": 1.2, "sigma": 0.2},
            "melanopic-edi": {"initial": 340, "sigma": 6.0},
            "power-draw": {"initial": 750, "sigma": 8.0},
            # Grows roughly one hour per hour at this scale.
            "burning-hours": {"initial": 30000, "decay_per_hour": -3.333e-05},
            "driver-temp": {"initial": 48, "sigma": 1.5},
            "hvac-health": {"initial": 4.6, "sigma": 0.05},
            "fire-health": {"initial": 4.8, "sigma": 0.02},
        },
        "faults": [
            {
                "path": "library/lighting/floor-1/adult-reading/illuminance",
                "at": "2025-01-21T00:00:00Z",
                "kind": "lamp_failure",
                "residual": 0.05,
            },
            {
                "path": "library/lighting/floor-2/periodicals/driver-temp",
                "at": "2025-01-13T00:00:00Z",
                "kind": "driver_overtemp",
                "delta": 30.0,
            },
        ],
    }


def demo_service_config() -> dict[str, Any]:
    return {
        "asset_config": "demo-building.json",
        "data_log": "../data/demo.jsonl",
        "host": "127.0.0.1",
        "port": 8000,
        "evaluation_interval_minutes": 15,
        "alarm_level": 2,
        "pdm_level": 2,
        "pdm_lead_days": 14,
        "policies": {
            "parameter_to_area": "critical",
            "area_to_floor": "weighted",
            "floor_to_subsystem": "weighted",
            "subsystem_to_building": "critical",
        },
        "calendar": {"technicians": ["kim", "ravi"], "capacity_per_day": 2, "horizon_days": 14},
        "pm": [
            {
                "path": "library/lighting/floor-1/adult-reading",
                "interval_days": 180,
                "last_done": "2024-10-01T00:00:00Z",
            },
            {
                "path": "library/fire",
                "interval_days": 30,
                "last_done": "2024-11-30T00:00:00Z",
            },
        ],
        "clock": {"mode": "simulated", "speedup": 900},
        "static_dir": "../frontend/dist",
    }


def write_demo_configs(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, payload in (
        ("demo-building.json", demo_building_config()),
        ("demo-scenario.json", demo_scenario_config()),
        ("demo-service.json", demo_service_config()),
    ):
        path = directory / name
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        written.append(path)
    return written


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("configs")
    for written_path in write_demo_configs(target):
        print(written_path)
