// Wire shapes of the twin service HTTP interface, mirrored field for field.
// Every leveled payload carries its display colour; the client never grades
// values itself.

export type Level = 1 | 2 | 3 | 4 | 5;

export interface TreeNode {
  id: string;
  kind: string;
  display_name: string;
  path: string;
  cil: number | null;
  unit: string | null;
  direction: string | null;
  children: TreeNode[];
}

export interface StatusNode {
  path: string;
  id: string;
  kind: string;
  display_name: string;
  now: Level | null;
  now_color: string;
  at_m3: Level | null;
  at_m3_color: string;
  at_m6: Level | null;
  at_m6_color: string;
  children: StatusNode[];
}

export interface Status {
  as_of: string;
  building: StatusNode;
}

export interface SnapshotEntry {
  parameter: string;
  path: string;
  ts: string | null;
  value: number | null;
  unit: string;
  level: Level | null;
  color: string;
}

export interface Cause {
  code: string;
  confidence: number;
  evidence: string;
}

export interface SnapshotAlarm {
  id: string;
  ts: string;
  path: string;
  parameter: string;
  level: Level;
  value: number;
  where: string[];
  causes: Cause[];
}

export interface Snapshot {
  path: string;
  as_of: string;
  area_level: Level | null;
  color: string;
  entries: SnapshotEntry[];
  alarms: SnapshotAlarm[];
}

export interface Bucket {
  start: string;
  mean: number | null;
  count: number;
}

export interface History {
  path: string;
  window: string;
  end: string;
  buckets: Bucket[];
}

export interface TrendModel {
  method: string;
  level: number;
  trend: number;
  alpha: number;
  beta: number;
  n_points: number;
  residual_std: number;
}

export interface Forecast {
  path: string;
  horizon: string;
  as_of: string;
  predicted_value: number;
  predicted_level: Level;
  color: string;
  interval_low: number;
  interval_high: number;
  model: TrendModel;
}

export interface Context {
  ts: string;
  latitude: number;
  longitude: number;
  outdoor_illuminance: number;
  cloud_cover: number;
  local_time: string;
}

export interface Slot {
  day: number;
  tech: string;
}

export type OrderStatus = "open" | "scheduled" | "in_progress" | "done" | "cancelled";

export interface WorkOrder {
  id: string;
  kind: string;
  path: string;
  priority: number;
  created_at: string;
  due_by: string;
  status: OrderStatus;
  slot: Slot | null;
  completed_at: string | null;
  trigger: Record<string, unknown>;
}

export interface TickEvent {
  type: "tick";
  ts: string;
  alarms: string[];
  orders: string[];
  scheduled: { id: string; day: number; tech: string }[];
  overflow: string[];
  forecasts_refreshed: boolean;
}

export interface HelloEvent {
  as_of: string;
}

export type WindowLabel = "h12" | "h48" | "week" | "month" | "year";
export const WINDOW_LABELS: WindowLabel[] = ["h12", "h48", "week", "month", "year"];

export type Horizon = "m3" | "m6";
