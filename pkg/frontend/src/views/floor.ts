// Floor page: a schematic grid of its areas. Chips come from the status
// tree; the CIL badge comes from the asset tree, which is the only payload
// that carries it.

import { href } from "../router.js";
import type { StatusNode, TreeNode } from "../types.js";
import { findTree, h, statusChips } from "./shared.js";

export function renderFloor(floorStatus: StatusNode, tree: TreeNode): HTMLElement {
  const root = h("div", {});
  const hero = h("div", { class: "hero" });
  hero.append(h("h1", {}, floorStatus.display_name));
  hero.append(statusChips(floorStatus));
  root.append(hero);

  root.append(h("h2", {}, "areas"));
  const plan = h("div", { class: "plan" });
  for (const area of floorStatus.children) {
    const node = findTree(tree, area.path);
    const card = h(
      "a",
      { class: "card", href: href({ view: "area", path: area.path }), "data-area": area.id },
      h("div", { class: "name" }, area.display_name),
      statusChips(area),
    );
    if (node?.cil != null) {
      card.append(h("span", { class: "cil-badge" }, `CIL ${node.cil}`));
    }
    plan.append(card);
  }
  root.append(plan);
  return root;
}
