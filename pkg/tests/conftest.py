"""Shared helpers: compact builders for trees, scenarios and runtimes."""

from __future__ import annotations

import json
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Any

import pytest

from twin.assets import AssetTree, build_tree
from twin.config import ServiceConfig
from twin.runtime import TwinRuntime

UTC = timezone.utc
T0 = datetime(2025, 1, 1, tzinfo=UTC)


def parameter_spec(
    parameter_id: str = "illuminance",
    direction: str = "higher_is_better",
    edges: tuple = (100, 300, 450, 500),
    unit: str = "lux",
    domain: tuple | None = (0, 2000),
    target: float | None = None,
) -> dict[str, Any]:
    bands: dict[str, Any] = {"edges": list(edges)}
    if target is not None:
        bands["target"] = target
    spec: dict[str, Any] = {
        "id": parameter_id,
        "kind": "parameter",
        "display_name": parameter_id,
        "unit": unit,
        "direction": direction,
        "bands": bands,
    }
    if domain is not None:
        spec["domain"] = list(domain)
    return spec


def area_spec(area_id: str, cil: int, parameters: list[dict] | None = None) -> dict[str, Any]:
    spec: dict[str, Any] = {"id": area_id, "kind": "user_area", "display_name": area_id, "cil": cil}
    if parameters is not None:
        spec["children"] = parameters
    return spec


def tree_config(
    areas_by_floor: dict[str, list[tuple[str, int]]],
    parameter_set: list[dict] | None = None,
) -> dict[str, Any]:
    """One lighting subsystem; areas given as (id, cil) per floor."""
    parameter_set = parameter_set or [parameter_spec()]
    floors = [
        {
            "id": floor_id,
            "kind": "floor",
            "display_name": floor_id,
            "children": [area_spec(a, cil) for a, cil in areas],
        }
        for floor_id, areas in areas_by_floor.items()
    ]
    return {
        "parameter_set": parameter_set,
        "building": {
            "id": "library",
            "kind": "building",
            "display_name": "Library",
            "children": [
                {"id": "lighting", "kind": "subsystem", "display_name": "Lighting", "children": floors}
            ],
        },
    }


@pytest.fixture
def one_area_tree() -> AssetTree:
    return build_tree(tree_config({"floor-1": [("reading-room", 2)]}))


@pytest.fixture
def runtime_factory(tmp_path):
    """Build runtimes over throwaway logs; closes them on teardown."""
    built: list[TwinRuntime] = []
    counter = {"n": 0}

    def make(
        config_dict: dict[str, Any],
        service_overrides: dict[str, Any] | None = None,
        data_name: str | None = None,
    ) -> TwinRuntime:
        counter["n"] += 1
        workdir = tmp_path / f"rt{counter['n']}"
        workdir.mkdir()
        (workdir / "building.json").write_text(json.dumps(config_dict), encoding="utf-8")
        service = {
            "asset_config": "building.json",
            "data_log": data_name or "data.jsonl",
            "calendar": {"technicians": ["kim", "ravi"], "capacity_per_day": 2, "horizon_days": 14},
        }
        service.update(service_overrides or {})
        (workdir / "service.json").write_text(json.dumps(service), encoding="utf-8")
        runtime = TwinRuntime(ServiceConfig.load(workdir / "service.json"))
        built.append(runtime)
        return runtime

    yield make
    for runtime in built:
        runtime.close()


def hourly_readings(path: str, values: list[float], start: datetime = T0, unit: str = "lux"):
    from twin.store import ParameterReading

    return [
        ParameterReading(ts=start + timedelta(hours=i), path=path, value=v, unit=unit)
        for i, v in enumerate(values)
    ]
