// Area page: the full parameter snapshot, a history chart for the selected
// parameter, prediction links, the corrective-order button and the live
// alarm panel.

import { levelColorName, cssFor } from "../levels.js";
import { href } from "../router.js";
import type {
  History,
  Snapshot,
  SnapshotAlarm,
  SnapshotEntry,
  StatusNode,
  WindowLabel,
} from "../types.js";
import { WINDOW_LABELS } from "../types.js";
import { chip, fmtValue, h, statusChips } from "./shared.js";

export interface AreaSelection {
  parameter: string | null;
  window: WindowLabel;
}

export interface AreaCallbacks {
  onSelectParameter(parameterId: string): void;
  onSelectWindow(window: WindowLabel): void;
  onRaiseCm(): void;
}

export function renderArea(
  areaStatus: StatusNode,
  snapshot: Snapshot,
  history: History | null,
  sel: AreaSelection,
  on: AreaCallbacks,
): HTMLElement {
  const root = h("div", {});

  const hero = h("div", { class: "hero" });
  hero.append(h("h1", {}, areaStatus.display_name));
  const chips = statusChips(areaStatus);
  chips.append(h("span", { class: "muted" }, `as of ${snapshot.as_of}`));
  hero.append(chips);
  hero.append(cmControls(on));
  root.append(hero);

  root.append(h("h2", {}, "parameters"));
  root.append(parameterTable(snapshot.entries, sel.parameter, on));

  const selected = snapshot.entries.find((e) => e.parameter === sel.parameter) ?? null;
  if (selected) {
    root.append(h("h2", {}, `history: ${selected.parameter}`));
    root.append(windowBar(sel.window, on));
    root.append(chartSection(selected, history));
    const links = h("p", {}, "predict: ");
    links.append(
      h("a", { href: href({ view: "predict", path: selected.path, horizon: "m3" }) }, "3 months"),
    );
    links.append(" · ");
    links.append(
      h("a", { href: href({ view: "predict", path: selected.path, horizon: "m6" }) }, "6 months"),
    );
    root.append(links);
  }

  root.append(h("h2", {}, `alarms (${snapshot.alarms.length})`));
  if (snapshot.alarms.length === 0) {
    root.append(h("p", { class: "muted" }, "no live alarms in this area"));
  } else {
    for (const alarm of snapshot.alarms) root.append(alarmCard(alarm));
  }
  return root;
}

function cmControls(on: AreaCallbacks): HTMLElement {
  const wrap = h("div", {});
  const confirm = h(
    "div",
    { class: "confirm-box", hidden: "" },
    h("span", {}, "raise a corrective work order for this area?"),
  );
  const yes = h("button", { class: "action danger", "data-role": "cm-yes" }, "yes");
  yes.addEventListener("click", () => on.onRaiseCm());
  const no = h("button", { class: "action" }, "no");
  no.addEventListener("click", () => {
    confirm.hidden = true;
  });
  confirm.append(yes, no);

  const btn = h("button", { class: "action", "data-role": "cm-open" }, "report a fault");
  btn.addEventListener("click", () => {
    confirm.hidden = false;
  });
  wrap.append(btn, confirm);
  return wrap;
}

function parameterTable(
  entries: SnapshotEntry[],
  selected: string | null,
  on: AreaCallbacks,
): HTMLElement {
  const table = h("table", {});
  table.append(
    h(
      "tr",
      {},
      h("th", {}, "parameter"),
      h("th", {}, "value"),
      h("th", {}, "level"),
      h("th", {}, "reading at"),
    ),
  );
  for (const entry of entries) {
    const row = h(
      "tr",
      {
        class: entry.parameter === selected ? "selectable row-selected" : "selectable",
        "data-parameter": entry.parameter,
      },
      h("td", {}, entry.parameter),
      h("td", { class: "num" }, entry.value == null ? "–" : `${fmtValue(entry.value)} ${entry.unit}`),
      h("td", {}, chip("", entry.level, entry.color)),
      h("td", { class: "muted" }, entry.ts ?? "no data"),
    );
    row.addEventListener("click", () => on.onSelectParameter(entry.parameter));
    table.append(row);
  }
  return table;
}

function windowBar(active: WindowLabel, on: AreaCallbacks): HTMLElement {
  const bar = h("div", { class: "windows" });
  for (const label of WINDOW_LABELS) {
    const btn = h(
      "button",
      label === active ? { class: "active", "data-window": label } : { "data-window": label },
      label,
    );
    btn.addEventListener("click", () => on.onSelectWindow(label));
    bar.append(btn);
  }
  return bar;
}

function chartSection(entry: SnapshotEntry, history: History | null): HTMLElement {
  const box = h("div", { class: "chart-box" });
  if (!history || history.buckets.every((b) => b.mean == null)) {
    box.append(h("p", { class: "muted" }, "no readings in this window"));
    return box;
  }
  box.append(
    h("div", { class: "chart-title" }, `${history.window} · bucket means · ${entry.unit}`),
  );
  box.append(chartSvg(history, entry.color));
  return box;
}

// Buckets carry a mean and a count but no level, so every point wears the
// parameter's current colour rather than a per-bucket grade.
function chartSvg(history: History, colorName: string): SVGElement {
  const W = 800;
  const H = 220;
  const PAD = 28;
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
  svg.setAttribute("role", "img");

  const means = history.buckets.map((b) => b.mean).filter((m): m is number => m != null);
  let lo = Math.min(...means);
  let hi = Math.max(...means);
  if (hi - lo < 1e-9) {
    lo -= 1;
    hi += 1;
  }
  const n = history.buckets.length;
  const x = (i: number) => (n <= 1 ? W / 2 : PAD + (i * (W - 2 * PAD)) / (n - 1));
  const y = (v: number) => H - PAD - ((v - lo) * (H - 2 * PAD)) / (hi - lo);

  const stroke = cssFor(colorName);
  let run: string[] = [];
  const flush = () => {
    if (run.length >= 2) {
      const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
      line.setAttribute("points", run.join(" "));
      line.setAttribute("fill", "none");
      line.setAttribute("stroke", stroke);
      line.setAttribute("stroke-width", "1.5");
      svg.append(line);
    }
    run = [];
  };
  history.buckets.forEach((bucket, i) => {
    if (bucket.mean == null) {
      flush();
      return;
    }
    run.push(`${x(i).toFixed(1)},${y(bucket.mean).toFixed(1)}`);
  });
  flush();

  history.buckets.forEach((bucket, i) => {
    if (bucket.mean == null) return;
    const dot = document.createElementNS("http://www.w3.org/2000/svg", "circle");
    dot.setAttribute("cx", x(i).toFixed(1));
    dot.setAttribute("cy", y(bucket.mean).toFixed(1));
    dot.setAttribute("r", "3");
    dot.setAttribute("fill", stroke);
    dot.setAttribute("data-start", bucket.start);
    const tip = document.createElementNS("http://www.w3.org/2000/svg", "title");
    tip.textContent = `${bucket.start}: ${bucket.mean.toFixed(2)} (${bucket.count} readings)`;
    dot.append(tip);
    svg.append(dot);
  });

  for (const [v, anchor] of [
    [hi, "hanging"],
    [lo, "auto"],
  ] as const) {
    const label = document.createElementNS("http://www.w3.org/2000/svg", "text");
    label.setAttribute("x", "4");
    label.setAttribute("y", y(v).toFixed(1));
    label.setAttribute("fill", "#7d8794");
    label.setAttribute("font-size", "11");
    label.setAttribute("dominant-baseline", anchor);
    label.textContent = fmtValue(v);
    svg.append(label);
  }
  return svg;
}

function alarmCard(alarm: SnapshotAlarm): HTMLElement {
  // Alarms are the one payload without a service-provided colour name.
  const colorName = levelColorName(alarm.level);
  const card = h("div", { class: "alarm", "data-alarm": alarm.id });
  const head = h("div", { class: "chips" });
  head.append(chip("level", alarm.level, colorName));
  head.append(h("strong", {}, alarm.parameter));
  head.append(h("span", { class: "num" }, fmtValue(alarm.value)));
  card.append(head);
  card.append(h("div", { class: "meta" }, `${alarm.ts} · ${alarm.where.join(" / ")}`));
  if (alarm.causes.length > 0) {
    const list = h("ul", { class: "causes" });
    for (const cause of alarm.causes) {
      list.append(
        h(
          "li",
          {},
          `${cause.code} (${(cause.confidence * 100).toFixed(0)}%): ${cause.evidence}`,
        ),
      );
    }
    card.append(list);
  }
  return card;
}
