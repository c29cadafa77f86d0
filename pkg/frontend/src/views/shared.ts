// Small DOM helpers shared by the views. No framework: elements are built
// directly and handed back to the router shell.

import type { StatusNode, TreeNode } from "../types.js";

type Child = Node | string | null;

export function h(
  tag: string,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElement {
  const el = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  for (const child of children) {
    if (child == null) continue;
    el.append(typeof child === "string" ? document.createTextNode(child) : child);
  }
  return el;
}

// A level chip: the colour class comes straight from the service's colour
// name, the number shown is the service's level.
export function chip(label: string, level: number | null, colorName: string): HTMLElement {
  const el = h("span", { class: `chip chip-${colorName}` });
  if (label) el.append(h("span", { class: "lbl" }, label));
  el.append(level == null ? "–" : String(level));
  el.title = level == null ? `${label || "level"}: no data` : `${label || "level"}: ${level}`;
  return el;
}

export function statusChips(node: StatusNode): HTMLElement {
  const box = h("div", { class: "chips" });
  box.append(chip("now", node.now, node.now_color));
  box.append(chip("m3", node.at_m3, node.at_m3_color));
  box.append(chip("m6", node.at_m6, node.at_m6_color));
  return box;
}

export function findStatus(root: StatusNode, path: string): StatusNode | null {
  if (root.path === path) return root;
  for (const child of root.children) {
    const hit = findStatus(child, path);
    if (hit) return hit;
  }
  return null;
}

export function findTree(root: TreeNode, path: string): TreeNode | null {
  if (root.path === path) return root;
  for (const child of root.children) {
    const hit = findTree(child, path);
    if (hit) return hit;
  }
  return null;
}

export function errorBox(message: string): HTMLElement {
  return h("div", { class: "error-box" }, message);
}

// Where an order's asset path should navigate: parameters land on their
// area's page, areas on their own, anything else stays plain text.
export function areaPathFor(tree: TreeNode, path: string): string | null {
  const node = findTree(tree, path);
  if (!node) return null;
  if (node.kind === "user_area") return node.path;
  if (node.kind === "parameter") return path.split("/").slice(0, -1).join("/");
  return null;
}

export function fmtValue(value: number | null): string {
  if (value == null) return "–";
  return Math.abs(value) >= 100 ? value.toFixed(0) : value.toFixed(1);
}
