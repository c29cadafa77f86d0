// Prediction page for one parameter and horizon, plus any maintenance
// orders already standing against that parameter or its area.

import { href } from "../router.js";
import type { Forecast, Horizon, WorkOrder } from "../types.js";
import { chip, fmtValue, h } from "./shared.js";
import { orderTable } from "./workorders.js";

const HORIZON_WORDS: Record<Horizon, string> = { m3: "3 months", m6: "6 months" };

export function renderPredict(
  forecast: Forecast,
  orders: WorkOrder[],
  unit: string | null,
): HTMLElement {
  const root = h("div", {});
  const hero = h("div", { class: "hero" });
  hero.append(h("h1", {}, `${forecast.path}`));
  const horizon = forecast.horizon as Horizon;
  const chips = h("div", { class: "chips" });
  chips.append(chip(`at +${HORIZON_WORDS[horizon] ?? forecast.horizon}`, forecast.predicted_level, forecast.color));
  chips.append(
    h(
      "span",
      { class: "num" },
      `${fmtValue(forecast.predicted_value)}${unit ? ` ${unit}` : ""}`,
    ),
  );
  hero.append(chips);
  hero.append(h("p", { class: "muted" }, `projected from state at ${forecast.as_of}`));

  const other: Horizon = horizon === "m3" ? "m6" : "m3";
  hero.append(
    h(
      "p",
      {},
      h(
        "a",
        { href: href({ view: "predict", path: forecast.path, horizon: other }) },
        `switch to ${HORIZON_WORDS[other]}`,
      ),
    ),
  );
  root.append(hero);

  root.append(h("h2", {}, "model"));
  const kv = h("dl", { class: "kv" });
  const rows: [string, string][] = [
    ["80% interval", `${fmtValue(forecast.interval_low)} .. ${fmtValue(forecast.interval_high)}`],
    ["method", forecast.model.method],
    ["fitted level", fmtValue(forecast.model.level)],
    ["trend per day", forecast.model.trend.toFixed(3)],
    ["points fitted", String(forecast.model.n_points)],
    ["residual std", forecast.model.residual_std.toFixed(3)],
  ];
  for (const [k, v] of rows) {
    kv.append(h("dt", {}, k), h("dd", { class: "num" }, v));
  }
  root.append(kv);

  const related = orders.filter(
    (o) => o.path === forecast.path || forecast.path.startsWith(`${o.path}/`),
  );
  root.append(h("h2", {}, "standing orders here"));
  if (related.length === 0) {
    root.append(h("p", { class: "muted" }, "none"));
  } else {
    root.append(orderTable(related, null));
  }
  return root;
}
