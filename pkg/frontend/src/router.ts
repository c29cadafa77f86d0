// Hash routes. Asset paths keep their slashes inside the fragment, so the
// area and predict routes greedily absorb the remaining segments.

import type { Horizon } from "./types.js";

export type Route =
  | { view: "building" }
  | { view: "sub"; sub: string }
  | { view: "floor"; sub: string; floor: string }
  | { view: "area"; path: string }
  | { view: "predict"; path: string; horizon: Horizon }
  | { view: "workorders" };

export function parseHash(hash: string): Route {
  const raw = hash.startsWith("#") ? hash.slice(1) : hash;
  const segments = raw.split("/").filter((s) => s.length > 0).map(decodeURIComponent);
  const head = segments[0];
  if (head === "sub" && segments.length === 2) {
    return { view: "sub", sub: segments[1]! };
  }
  if (head === "floor" && segments.length === 3) {
    return { view: "floor", sub: segments[1]!, floor: segments[2]! };
  }
  if (head === "area" && segments.length >= 2) {
    return { view: "area", path: segments.slice(1).join("/") };
  }
  if (head === "predict" && segments.length >= 3) {
    const tail = segments[segments.length - 1];
    if (tail === "m3" || tail === "m6") {
      return { view: "predict", path: segments.slice(1, -1).join("/"), horizon: tail };
    }
  }
  if (head === "workorders" && segments.length === 1) {
    return { view: "workorders" };
  }
  return { view: "building" };
}

export function href(route: Route): string {
  const enc = (p: string) => p.split("/").map(encodeURIComponent).join("/");
  switch (route.view) {
    case "building":
      return "#/building";
    case "sub":
      return `#/sub/${encodeURIComponent(route.sub)}`;
    case "floor":
      return `#/floor/${encodeURIComponent(route.sub)}/${encodeURIComponent(route.floor)}`;
    case "area":
      return `#/area/${enc(route.path)}`;
    case "predict":
      return `#/predict/${enc(route.path)}/${route.horizon}`;
    case "workorders":
      return "#/workorders";
  }
}
