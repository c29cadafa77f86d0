// Top page: the building's integrated state and one card per subsystem.

import { href } from "../router.js";
import type { Status, StatusNode } from "../types.js";
import { h, statusChips } from "./shared.js";

export function renderBuilding(status: Status): HTMLElement {
  const building = status.building;
  const root = h("div", {});

  const hero = h("div", { class: "hero" });
  hero.append(h("h1", { id: "building-name" }, building.display_name));
  const badge = statusChips(building);
  badge.id = "building-badge";
  hero.append(badge);
  hero.append(h("p", { class: "muted" }, `state as of ${status.as_of}`));
  root.append(hero);

  root.append(h("h2", {}, "subsystems"));
  const grid = h("div", { class: "card-grid" });
  for (const sub of building.children) {
    grid.append(subsystemCard(sub));
  }
  root.append(grid);
  return root;
}

function subsystemCard(sub: StatusNode): HTMLElement {
  const card = h(
    "a",
    { class: "card", href: href({ view: "sub", sub: sub.id }), "data-sub": sub.id },
    h("span", { class: "kind" }, sub.kind),
    h("div", { class: "name" }, sub.display_name),
    statusChips(sub),
  );
  return card;
}
