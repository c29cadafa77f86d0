// Application shell: owns the fetched tree/status, the hash router and the
// live stream, and mounts one view at a time. Views stay pure; everything
// async happens here.

import {
  ApiError,
  createWorkOrder,
  fetchForecast,
  fetchHistory,
  fetchSnapshot,
  fetchStatus,
  fetchTree,
  fetchWorkOrders,
  transitionOrder,
} from "./api.js";
import { href, parseHash, type Route } from "./router.js";
import { connectStream, type StreamCtor } from "./stream.js";
import type { Status, TickEvent, TreeNode, WindowLabel } from "./types.js";
import { renderArea, type AreaSelection } from "./views/area.js";
import { renderBuilding } from "./views/building.js";
import { renderFloor } from "./views/floor.js";
import { renderPredict } from "./views/predict.js";
import { areaPathFor, errorBox, findStatus, findTree, h } from "./views/shared.js";
import { renderSub } from "./views/sub.js";
import { renderWorkOrders } from "./views/workorders.js";

export interface Shell {
  app: HTMLElement;
  crumbs: HTMLElement;
  asOf: HTMLElement;
  live: HTMLElement;
}

export interface AppOptions {
  base?: string;
  stream?: StreamCtor;
}

const DEFAULT_WINDOW: WindowLabel = "h48";

export class App {
  private tree: TreeNode | null = null;
  private status: Status | null = null;
  private areaSel = new Map<string, AreaSelection>();
  private seq = 0;
  private inflight: Promise<void> = Promise.resolve();
  private readonly base: string;

  constructor(
    private readonly els: Shell,
    private readonly opts: AppOptions = {},
  ) {
    this.base = opts.base ?? "";
  }

  async start(): Promise<void> {
    [this.tree, this.status] = await Promise.all([
      fetchTree(this.base),
      fetchStatus(this.base),
    ]);
    window.addEventListener("hashchange", () => {
      this.inflight = this.render();
    });
    connectStream(
      this.base,
      {
        onHello: (hello) => {
          this.els.asOf.textContent = `as of ${hello.as_of}`;
        },
        onTick: (tick) => {
          this.inflight = this.onTick(tick);
        },
        onState: (live) => {
          this.els.live.className = live ? "live live-on" : "live live-off";
        },
      },
      this.opts.stream,
    );
    await this.render();
  }

  // Resolves once the work kicked off by the latest event has rendered.
  settled(): Promise<void> {
    return this.inflight;
  }

  private async onTick(tick: TickEvent): Promise<void> {
    this.els.asOf.textContent = `as of ${tick.ts}`;
    try {
      this.status = await fetchStatus(this.base);
    } catch {
      return; // keep the last known state; the next tick retries
    }
    await this.render();
  }

  async render(): Promise<void> {
    const token = ++this.seq;
    const route = parseHash(window.location.hash);
    this.els.crumbs.replaceChildren(...this.crumbsFor(route));
    let view: HTMLElement;
    try {
      view = await this.viewFor(route);
    } catch (err) {
      view =
        err instanceof ApiError
          ? errorBox(`${err.code}: ${err.detail}`)
          : errorBox(String(err));
    }
    if (token !== this.seq) return; // superseded by a newer render
    this.els.app.replaceChildren(view);
  }

  private async viewFor(route: Route): Promise<HTMLElement> {
    const status = this.status;
    const tree = this.tree;
    if (!status || !tree) return h("p", { class: "muted" }, "loading…");

    switch (route.view) {
      case "building":
        return renderBuilding(status);

      case "sub": {
        const sub = status.building.children.find((c) => c.id === route.sub);
        return sub ? renderSub(sub) : errorBox(`no such subsystem: ${route.sub}`);
      }

      case "floor": {
        const sub = status.building.children.find((c) => c.id === route.sub);
        const floor = sub?.children.find((c) => c.id === route.floor);
        return floor ? renderFloor(floor, tree) : errorBox(`no such floor: ${route.floor}`);
      }

      case "area": {
        const areaStatus = findStatus(status.building, route.path);
        if (!areaStatus) return errorBox(`no such area: ${route.path}`);
        const snapshot = await fetchSnapshot(route.path, this.base);
        const sel = this.selectionFor(route.path);
        if (sel.parameter == null && snapshot.entries.length > 0) {
          sel.parameter = snapshot.entries[0]!.parameter;
        }
        const entry = snapshot.entries.find((e) => e.parameter === sel.parameter);
        let history = null;
        if (entry && entry.ts != null) {
          try {
            history = await fetchHistory(entry.path, sel.window, this.base);
          } catch {
            history = null; // parameter without readings renders without a chart
          }
        }
        return renderArea(areaStatus, snapshot, history, sel, {
          onSelectParameter: (id) => {
            sel.parameter = id;
            this.inflight = this.render();
          },
          onSelectWindow: (w) => {
            sel.window = w;
            this.inflight = this.render();
          },
          onRaiseCm: () => {
            this.inflight = this.raiseCm(route.path);
          },
        });
      }

      case "predict": {
        const [forecast, orders] = await Promise.all([
          fetchForecast(route.path, route.horizon, this.base),
          fetchWorkOrders(this.base),
        ]);
        const node = findTree(tree, route.path);
        return renderPredict(forecast, orders, node?.unit ?? null);
      }

      case "workorders": {
        const orders = await fetchWorkOrders(this.base);
        return renderWorkOrders(orders, {
          onTransition: (id, to) => {
            this.inflight = this.transition(id, to);
          },
          linkFor: (path) => {
            const area = areaPathFor(tree, path);
            return area ? href({ view: "area", path: area }) : null;
          },
        });
      }
    }
  }

  private selectionFor(path: string): AreaSelection {
    let sel = this.areaSel.get(path);
    if (!sel) {
      sel = { parameter: null, window: DEFAULT_WINDOW };
      this.areaSel.set(path, sel);
    }
    return sel;
  }

  private async raiseCm(path: string): Promise<void> {
    try {
      await createWorkOrder(path, "raised from dashboard", this.base);
    } catch (err) {
      this.notice(err);
      return;
    }
    window.location.hash = href({ view: "workorders" });
    await this.render();
  }

  private async transition(
    id: string,
    to: "in_progress" | "done" | "cancelled",
  ): Promise<void> {
    try {
      await transitionOrder(id, to, undefined, this.base);
    } catch (err) {
      this.notice(err);
      return;
    }
    await this.render();
  }

  private notice(err: unknown): void {
    const box =
      err instanceof ApiError ? errorBox(`${err.code}: ${err.detail}`) : errorBox(String(err));
    this.els.app.prepend(box);
  }

  private crumbsFor(route: Route): (HTMLElement | string)[] {
    const tree = this.tree;
    if (!tree) return [];
    const sep = () => h("span", { class: "sep" }, "/");
    const link = (text: string, target: string) => h("a", { href: target }, text);

    switch (route.view) {
      case "building":
        return [];
      case "workorders":
        return ["work orders"];
      case "sub": {
        const node = findTree(tree, `${tree.path}/${route.sub}`);
        return [node?.display_name ?? route.sub];
      }
      case "floor": {
        const sub = findTree(tree, `${tree.path}/${route.sub}`);
        const floor = findTree(tree, `${tree.path}/${route.sub}/${route.floor}`);
        return [
          link(sub?.display_name ?? route.sub, href({ view: "sub", sub: route.sub })),
          sep(),
          floor?.display_name ?? route.floor,
        ];
      }
      case "area":
      case "predict": {
        const areaPath = route.view === "area" ? route.path : areaPathFor(tree, route.path);
        if (!areaPath) return [];
        const segments = areaPath.split("/");
        const out: (HTMLElement | string)[] = [];
        // Segment 0 is the building root, already the brand link.
        for (let i = 2; i <= segments.length; i += 1) {
          const prefix = segments.slice(0, i).join("/");
          const node = findTree(tree, prefix);
          if (!node) continue;
          if (out.length > 0) out.push(sep());
          if (prefix === areaPath && route.view === "area") {
            out.push(node.display_name);
          } else {
            out.push(link(node.display_name, this.crumbTarget(node, segments, i)));
          }
        }
        if (route.view === "predict") {
          const leaf = findTree(tree, route.path);
          out.push(sep());
          out.push(`${leaf?.display_name ?? route.path.split("/").pop()} ${route.horizon}`);
        }
        return out;
      }
    }
  }

  private crumbTarget(node: TreeNode, segments: string[], depth: number): string {
    if (node.kind === "user_area") return href({ view: "area", path: node.path });
    if (node.kind === "floor" && depth >= 3) {
      return href({ view: "floor", sub: segments[1]!, floor: segments[2]! });
    }
    return href({ view: "sub", sub: segments[1]! });
  }
}

function boot(): void {
  const app = document.getElementById("app");
  const crumbs = document.getElementById("crumbs");
  const asOf = document.getElementById("as-of");
  const live = document.getElementById("live");
  if (!app || !crumbs || !asOf || !live) return;
  const shell: Shell = { app, crumbs, asOf, live };
  void new App(shell).start().catch((err) => {
    app.replaceChildren(errorBox(`failed to start: ${String(err)}`));
  });
}

boot();
