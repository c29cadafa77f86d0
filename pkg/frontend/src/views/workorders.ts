// Work order list with the transitions a desk operator may take. Scheduling
// itself is the service's job (the evaluation loop packs the calendar), so
// the buttons cover start, complete and cancel only.

import type { OrderStatus, WorkOrder } from "../types.js";
import { h } from "./shared.js";

export interface OrderCallbacks {
  onTransition(id: string, to: "in_progress" | "done" | "cancelled"): void;
  // Resolves an order's asset path to a view link, or null for plain text.
  linkFor?: (path: string) => string | null;
}

const ACTIONS: Record<OrderStatus, { label: string; to: "in_progress" | "done" | "cancelled" }[]> =
  {
    open: [{ label: "cancel", to: "cancelled" }],
    scheduled: [
      { label: "start", to: "in_progress" },
      { label: "cancel", to: "cancelled" },
    ],
    in_progress: [{ label: "complete", to: "done" }],
    done: [],
    cancelled: [],
  };

export function renderWorkOrders(orders: WorkOrder[], on: OrderCallbacks): HTMLElement {
  const root = h("div", {});
  root.append(h("h1", {}, "work orders"));
  if (orders.length === 0) {
    root.append(h("p", { class: "muted" }, "nothing on the books"));
    return root;
  }
  root.append(orderTable(orders, on));
  return root;
}

export function orderTable(orders: WorkOrder[], on: OrderCallbacks | null): HTMLElement {
  const table = h("table", {});
  const head = h(
    "tr",
    {},
    h("th", {}, "id"),
    h("th", {}, "kind"),
    h("th", {}, "asset"),
    h("th", {}, "prio"),
    h("th", {}, "due by"),
    h("th", {}, "status"),
    h("th", {}, "slot"),
  );
  if (on) head.append(h("th", {}, "actions"));
  table.append(head);

  for (const order of orders) {
    const link = on?.linkFor?.(order.path) ?? null;
    const asset = link ? h("a", { href: link }, order.path) : h("span", {}, order.path);
    const row = h(
      "tr",
      { "data-order": order.id },
      h("td", { class: "num" }, order.id),
      h("td", {}, h("span", { class: `wo-kind wo-${order.kind}` }, order.kind)),
      h("td", {}, asset),
      h("td", { class: "num" }, String(order.priority)),
      h("td", { class: "num" }, order.due_by),
      h("td", {}, h("span", { class: `status-${order.status}` }, order.status)),
      h("td", {}, order.slot ? `day ${order.slot.day} · ${order.slot.tech}` : "–"),
    );
    if (on) {
      const cell = h("td", {});
      for (const action of ACTIONS[order.status]) {
        const btn = h(
          "button",
          { class: "action", "data-action": action.to, "data-order-id": order.id },
          action.label,
        );
        btn.addEventListener("click", () => on.onTransition(order.id, action.to));
        cell.append(btn);
      }
      row.append(cell);
    }
    table.append(row);
  }
  return table;
}
