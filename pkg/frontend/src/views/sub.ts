// Subsystem page. Floored subsystems list their floors; flat ones link
// straight to their areas.

import { href } from "../router.js";
import type { StatusNode } from "../types.js";
import { h, statusChips } from "./shared.js";

export function renderSub(sub: StatusNode): HTMLElement {
  const root = h("div", {});
  const hero = h("div", { class: "hero" });
  hero.append(h("h1", {}, sub.display_name));
  hero.append(statusChips(sub));
  root.append(hero);

  root.append(h("h2", {}, sub.children.some((c) => c.kind === "floor") ? "floors" : "areas"));
  const grid = h("div", { class: "card-grid" });
  for (const child of sub.children) {
    const target =
      child.kind === "floor"
        ? href({ view: "floor", sub: sub.id, floor: child.id })
        : href({ view: "area", path: child.path });
    grid.append(
      h(
        "a",
        { class: "card", href: target, "data-child": child.id },
        h("span", { class: "kind" }, child.kind),
        h("div", { class: "name" }, child.display_name),
        statusChips(child),
      ),
    );
  }
  root.append(grid);
  return root;
}
