// @vitest-environment node
//
// End-to-end check against a real service process: a small simulated
// dataset is generated, the HTTP service is started on a free port, and
// the corrective-order flow is driven through the same client modules the
// page uses.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { createServer, type AddressInfo } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { Window } from "happy-dom";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import {
  ApiError,
  createWorkOrder,
  fetchStatus,
  fetchTree,
  fetchWorkOrders,
  transitionOrder,
} from "../src/api.js";
import { renderWorkOrders } from "../src/views/workorders.js";

const AREA = "library/lighting/floor-1/reading-room";

let workdir: string;
let child: ChildProcess | null = null;
let exited: Promise<void> = Promise.resolve();
let stderrBuf = "";
let base = "";

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.once("error", reject);
    srv.listen(0, "127.0.0.1", () => {
      const { port } = srv.address() as AddressInfo;
      srv.close(() => resolve(port));
    });
  });
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

function writeConfigs(dir: string): void {
  const building = {
    parameter_set: [
      {
        id: "illuminance",
        kind: "parameter",
        display_name: "illuminance",
        unit: "lux",
        direction: "higher_is_better",
        bands: { edges: [100, 300, 450, 500] },
        domain: [0, 2000],
      },
    ],
    building: {
      id: "library",
      kind: "building",
      display_name: "Library",
      children: [
        {
          id: "lighting",
          kind: "subsystem",
          display_name: "Lighting",
          children: [
            {
              id: "floor-1",
              kind: "floor",
              display_name: "floor-1",
              children: [
                { id: "reading-room", kind: "user_area", display_name: "reading-room", cil: 2 },
              ],
            },
          ],
        },
      ],
    },
  };
  writeFileSync(join(dir, "building.json"), JSON.stringify(building));

  const scenario = {
    asset_config: "building.json",
    seed: 99,
    start: "2025-01-01T00:00:00Z",
    days: 1.0,
    cadence_minutes: 30,
    processes: { illuminance: { initial: 480.0, sigma: 2.0 } },
    context: {
      latitude: 60.6,
      longitude: 15.6,
      utc_offset_hours: 1.0,
      sunrise_hour: 8.0,
      sunset_hour: 16.0,
    },
  };
  writeFileSync(join(dir, "scenario.json"), JSON.stringify(scenario));

  const service = {
    asset_config: "building.json",
    data_log: "data.jsonl",
    evaluation_interval_minutes: 60,
    calendar: { technicians: ["kim", "ravi"], capacity_per_day: 2, horizon_days: 14 },
  };
  writeFileSync(join(dir, "service.json"), JSON.stringify(service));
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "twin-live-"));
  writeConfigs(workdir);
  execFileSync("python3", [
    "-m",
    "twin.cli",
    "simulate",
    "--config",
    join(workdir, "scenario.json"),
    "--out",
    join(workdir, "data.jsonl"),
  ]);

  const port = await freePort();
  base = `http://127.0.0.1:${port}`;
  child = spawn(
    "python3",
    [
      "-m",
      "twin.cli",
      "serve",
      "--config",
      join(workdir, "service.json"),
      "--host",
      "127.0.0.1",
      "--port",
      String(port),
    ],
    { stdio: ["ignore", "ignore", "pipe"] },
  );
  child.stderr?.on("data", (chunk: Buffer) => {
    stderrBuf += chunk.toString();
  });
  exited = new Promise((resolve) => child?.once("exit", () => resolve()));

  const deadline = Date.now() + 30_000;
  for (;;) {
    if (child.exitCode != null) throw new Error(`service exited early:\n${stderrBuf}`);
    try {
      await fetchStatus(base);
      break;
    } catch {
      if (Date.now() > deadline) throw new Error(`service never came up:\n${stderrBuf}`);
      await sleep(250);
    }
  }

  const win = new Window();
  (globalThis as { document?: unknown }).document = win.document;
}, 90_000);

afterAll(async () => {
  if (child && child.exitCode == null) {
    child.kill("SIGTERM");
    await Promise.race([exited, sleep(10_000)]);
    if (child.exitCode == null) child.kill("SIGKILL");
  }
  rmSync(workdir, { recursive: true, force: true });
}, 30_000);

describe("live service", () => {
  it("serves the asset tree and an integrated status", async () => {
    const tree = await fetchTree(base);
    expect(tree.display_name).toBe("Library");
    expect(tree.children[0]?.id).toBe("lighting");

    const status = await fetchStatus(base);
    expect(status.building.display_name).toBe("Library");
    expect(status.building.now).not.toBeNull();
  });

  it("streams a hello frame to new listeners", async () => {
    const controller = new AbortController();
    const res = await fetch(`${base}/api/v1/stream`, { signal: controller.signal });
    expect(res.ok).toBe(true);
    const reader = res.body!.getReader();
    const { value } = await reader.read();
    controller.abort();
    const frame = new TextDecoder().decode(value);
    expect(frame).toContain("event: hello");
    expect(frame).toContain("as_of");
  });

  it("round-trips a corrective order from button payload to visible row", async () => {
    const created = await createWorkOrder(AREA, "ballast hum reported at the desk", base);
    expect(created.kind).toBe("cm");
    expect(created.status).toBe("open");
    expect(created.path).toBe(AREA);

    // A second report for the same area while one is live must refuse.
    await expect(createWorkOrder(AREA, "again", base)).rejects.toMatchObject({
      status: 409,
      code: "DuplicateOrder",
    });

    const orders = await fetchWorkOrders(base);
    const mine = orders.find((o) => o.id === created.id);
    expect(mine).toBeDefined();

    const view = renderWorkOrders(orders, { onTransition: () => {} });
    const row = view.querySelector(`[data-order="${created.id}"]`);
    expect(row).not.toBeNull();
    expect(row?.textContent).toContain(AREA);
    expect(row?.querySelector(".status-open")).not.toBeNull();

    const cancelled = await transitionOrder(created.id, "cancelled", undefined, base);
    expect(cancelled.status).toBe("cancelled");

    const after = await fetchWorkOrders(base);
    expect(after.find((o) => o.id === created.id)?.status).toBe("cancelled");
  });

  it("rejects an illegal transition with the conflict envelope", async () => {
    const created = await createWorkOrder("library/lighting/floor-1", "whole floor flicker", base);
    try {
      await transitionOrder(created.id, "done", undefined, base);
      expect.unreachable("done straight from open must not pass");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(409);
      expect((err as ApiError).code).toBe("IllegalTransition");
    } finally {
      await transitionOrder(created.id, "cancelled", undefined, base);
    }
  });
});
