// Thin typed wrapper over the service's JSON routes. Errors arrive as
// {error, detail} envelopes and are rethrown with both halves intact.

import type {
  Context,
  Forecast,
  History,
  Horizon,
  Snapshot,
  Status,
  TreeNode,
  WindowLabel,
  WorkOrder,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`[${code}] ${detail}`);
    this.name = "ApiError";
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(`${base}/api/v1${path}`, init);
  if (!res.ok) {
    let code = `http ${res.status}`;
    let detail = res.statusText;
    try {
      const body = (await res.json()) as { error?: string; detail?: string };
      if (body.error) code = body.error;
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body, keep the status line
    }
    throw new ApiError(res.status, code, detail);
  }
  return (await res.json()) as T;
}

const enc = encodeURIComponent;

// Asset paths contain slashes that must survive as path segments.
function encodePath(path: string): string {
  return path.split("/").map(enc).join("/");
}

export function fetchTree(base = ""): Promise<TreeNode> {
  return request<TreeNode>(base, "/tree");
}

export function fetchStatus(base = ""): Promise<Status> {
  return request<Status>(base, "/status");
}

export function fetchSnapshot(path: string, base = ""): Promise<Snapshot> {
  return request<Snapshot>(base, `/assets/${encodePath(path)}/snapshot`);
}

export function fetchHistory(path: string, window: WindowLabel, base = ""): Promise<History> {
  return request<History>(base, `/assets/${encodePath(path)}/history?window=${window}`);
}

export function fetchForecast(path: string, horizon: Horizon, base = ""): Promise<Forecast> {
  return request<Forecast>(base, `/assets/${encodePath(path)}/forecast?horizon=${horizon}`);
}

export function fetchContext(base = ""): Promise<Context> {
  return request<Context>(base, "/context/latest");
}

export function fetchWorkOrders(base = ""): Promise<WorkOrder[]> {
  return request<WorkOrder[]>(base, "/workorders");
}

export function createWorkOrder(path: string, note: string, base = ""): Promise<WorkOrder> {
  return request<WorkOrder>(base, "/workorders", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ path, note }),
  });
}

export function transitionOrder(
  id: string,
  to: "scheduled" | "in_progress" | "done" | "cancelled",
  slot?: { day: number; tech: string },
  base = "",
): Promise<WorkOrder> {
  return request<WorkOrder>(base, `/workorders/${enc(id)}/transition`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(slot ? { to, slot } : { to }),
  });
}
