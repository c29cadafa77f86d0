// Canned service payloads used by the render tests. Shapes follow the wire
// contract exactly; values are chosen to exercise every colour plus no-data.

import type {
  Forecast,
  History,
  Snapshot,
  Status,
  StatusNode,
  TreeNode,
  WorkOrder,
} from "../src/types.js";

export const AREA = "library/lighting/floor-1/adult-reading";
export const LUX = `${AREA}/illuminance`;

function treeParam(id: string, unit: string, parent: string): TreeNode {
  return {
    id,
    kind: "parameter",
    display_name: id,
    path: `${parent}/${id}`,
    cil: null,
    unit,
    direction: "higher_is_better",
    children: [],
  };
}

function treeArea(id: string, cil: number, parent: string): TreeNode {
  const path = `${parent}/${id}`;
  return {
    id,
    kind: "user_area",
    display_name: id,
    path,
    cil,
    unit: null,
    direction: null,
    children: [
      treeParam("illuminance", "lux", path),
      treeParam("ugr", "", path),
      treeParam("driver-temp", "C", path),
    ],
  };
}

export const TREE: TreeNode = {
  id: "library",
  kind: "building",
  display_name: "Library",
  path: "library",
  cil: null,
  unit: null,
  direction: null,
  children: [
    {
      id: "lighting",
      kind: "subsystem",
      display_name: "Lighting",
      path: "library/lighting",
      cil: null,
      unit: null,
      direction: null,
      children: [
        {
          id: "floor-1",
          kind: "floor",
          display_name: "Floor 1",
          path: "library/lighting/floor-1",
          cil: null,
          unit: null,
          direction: null,
          children: [
            treeArea("adult-reading", 1, "library/lighting/floor-1"),
            treeArea("kids-corner", 3, "library/lighting/floor-1"),
          ],
        },
        {
          id: "floor-2",
          kind: "floor",
          display_name: "Floor 2",
          path: "library/lighting/floor-2",
          cil: null,
          unit: null,
          direction: null,
          children: [treeArea("stacks", 2, "library/lighting/floor-2")],
        },
      ],
    },
    {
      id: "hvac",
      kind: "subsystem",
      display_name: "HVAC",
      path: "library/hvac",
      cil: null,
      unit: null,
      direction: null,
      children: [treeArea("plant-room", 4, "library/hvac")],
    },
  ],
};

function statusNode(
  id: string,
  kind: string,
  path: string,
  levels: [number | null, string, number | null, string, number | null, string],
  children: StatusNode[] = [],
): StatusNode {
  const [now, nowColor, m3, m3Color, m6, m6Color] = levels;
  return {
    path,
    id,
    kind,
    display_name: id === "library" ? "Library" : id,
    now: now as StatusNode["now"],
    now_color: nowColor,
    at_m3: m3 as StatusNode["at_m3"],
    at_m3_color: m3Color,
    at_m6: m6 as StatusNode["at_m6"],
    at_m6_color: m6Color,
    children,
  };
}

export const STATUS: Status = {
  as_of: "2025-03-01T12:00:00Z",
  building: statusNode(
    "library",
    "building",
    "library",
    [4, "green", 3, "yellow", 3, "yellow"],
    [
      statusNode(
        "lighting",
        "subsystem",
        "library/lighting",
        [4, "green", 3, "yellow", 2, "orange"],
        [
          statusNode(
            "floor-1",
            "floor",
            "library/lighting/floor-1",
            [4, "green", 3, "yellow", 2, "orange"],
            [
              statusNode("adult-reading", "user_area", AREA, [4, "green", 3, "yellow", 2, "orange"]),
              statusNode(
                "kids-corner",
                "user_area",
                "library/lighting/floor-1/kids-corner",
                [3, "yellow", 3, "yellow", 3, "yellow"],
              ),
            ],
          ),
          statusNode(
            "floor-2",
            "floor",
            "library/lighting/floor-2",
            [null, "grey", null, "grey", null, "grey"],
            [
              statusNode(
                "stacks",
                "user_area",
                "library/lighting/floor-2/stacks",
                [null, "grey", null, "grey", null, "grey"],
              ),
            ],
          ),
        ],
      ),
      statusNode(
        "hvac",
        "subsystem",
        "library/hvac",
        [5, "blue", 5, "blue", 4, "green"],
        [
          statusNode("plant-room", "user_area", "library/hvac/plant-room", [
            5,
            "blue",
            5,
            "blue",
            4,
            "green",
          ]),
        ],
      ),
    ],
  ),
};

export const SNAPSHOT: Snapshot = {
  path: AREA,
  as_of: "2025-03-01T12:00:00Z",
  area_level: 2,
  color: "orange",
  entries: [
    {
      parameter: "illuminance",
      path: LUX,
      ts: "2025-03-01T11:45:00Z",
      value: 512.3,
      unit: "lux",
      level: 4,
      color: "green",
    },
    {
      parameter: "ugr",
      path: `${AREA}/ugr`,
      ts: "2025-03-01T11:45:00Z",
      value: 24.8,
      unit: "",
      level: 2,
      color: "orange",
    },
    {
      parameter: "cct",
      path: `${AREA}/cct`,
      ts: "2025-03-01T11:45:00Z",
      value: 4080.0,
      unit: "K",
      level: 3,
      color: "yellow",
    },
    {
      parameter: "driver-temp",
      path: `${AREA}/driver-temp`,
      ts: null,
      value: null,
      unit: "C",
      level: null,
      color: "grey",
    },
  ],
  alarms: [
    {
      id: "al-7f2e",
      ts: "2025-03-01T11:45:00Z",
      path: `${AREA}/ugr`,
      parameter: "ugr",
      level: 2,
      value: 24.8,
      where: ["Library", "Lighting", "Floor 1", "adult-reading"],
      causes: [
        { code: "GLARE_SOURCE", confidence: 0.7, evidence: "ugr above comfort band" },
        { code: "SENSOR_DRIFT", confidence: 0.2, evidence: "no co-moving parameters" },
      ],
    },
  ],
};

export const HISTORY: History = {
  path: LUX,
  window: "h48",
  end: "2025-03-01T12:00:00Z",
  buckets: [
    { start: "2025-02-27T12:00:00Z", mean: 505.2, count: 4 },
    { start: "2025-02-27T18:00:00Z", mean: 508.9, count: 4 },
    { start: "2025-02-28T00:00:00Z", mean: null, count: 0 },
    { start: "2025-02-28T06:00:00Z", mean: null, count: 0 },
    { start: "2025-02-28T12:00:00Z", mean: 511.0, count: 4 },
    { start: "2025-02-28T18:00:00Z", mean: 512.8, count: 4 },
    { start: "2025-03-01T00:00:00Z", mean: 510.4, count: 4 },
    { start: "2025-03-01T06:00:00Z", mean: 512.3, count: 3 },
  ],
};

export const FORECAST: Forecast = {
  path: LUX,
  horizon: "m3",
  as_of: "2025-03-01T12:00:00Z",
  predicted_value: 431.8,
  predicted_level: 3,
  color: "yellow",
  interval_low: 399.1,
  interval_high: 464.5,
  model: {
    method: "holt",
    level: 511.6,
    trend: -0.886,
    alpha: 0.3,
    beta: 0.1,
    n_points: 90,
    residual_std: 4.21,
  },
};

export const ORDERS: WorkOrder[] = [
  {
    id: "wo-cm-polite",
    kind: "cm",
    path: AREA,
    priority: 1,
    created_at: "2025-03-01T09:00:00Z",
    due_by: "2025-03-03T09:00:00Z",
    status: "open",
    slot: null,
    completed_at: null,
    trigger: { kind: "manual", note: "flicker reported at desk 4" },
  },
  {
    id: "wo-pdm-lux",
    kind: "pdm",
    path: LUX,
    priority: 2,
    created_at: "2025-02-20T00:00:00Z",
    due_by: "2025-04-15T00:00:00Z",
    status: "scheduled",
    slot: { day: 2, tech: "kim" },
    completed_at: null,
    trigger: { kind: "forecast", horizon: "m3", predicted_level: 2 },
  },
  {
    id: "wo-pm-hvac",
    kind: "pm",
    path: "library/hvac/plant-room",
    priority: 3,
    created_at: "2025-02-01T00:00:00Z",
    due_by: "2025-03-10T00:00:00Z",
    status: "in_progress",
    slot: { day: 1, tech: "ravi" },
    completed_at: null,
    trigger: { kind: "interval", every_days: 90 },
  },
  {
    id: "wo-done",
    kind: "pm",
    path: "library/hvac/plant-room",
    priority: 3,
    created_at: "2024-11-01T00:00:00Z",
    due_by: "2024-12-01T00:00:00Z",
    status: "done",
    slot: { day: 3, tech: "kim" },
    completed_at: "2024-11-20T00:00:00Z",
    trigger: { kind: "interval", every_days: 90 },
  },
  {
    id: "wo-gone",
    kind: "cm",
    path: "library/lighting/floor-2/stacks",
    priority: 1,
    created_at: "2024-10-01T00:00:00Z",
    due_by: "2024-10-03T00:00:00Z",
    status: "cancelled",
    slot: null,
    completed_at: null,
    trigger: { kind: "manual", note: "false report" },
  },
];
