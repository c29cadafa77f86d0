// Display side of the five-level scale. The service names the colour for
// every level it reports; snapshot alarms are the one payload that ships a
// bare level, so this map is applied there and nowhere else is a level
// turned into a colour client-side.

export const LEVEL_COLOR_NAMES: Record<number, string> = {
  1: "red",
  2: "orange",
  3: "yellow",
  4: "green",
  5: "blue",
};

export const NO_DATA_COLOR = "grey";

export function levelColorName(level: number | null | undefined): string {
  if (level == null) return NO_DATA_COLOR;
  const name = LEVEL_COLOR_NAMES[level];
  if (!name) throw new Error(`level out of range: ${level}`);
  return name;
}

const CSS_HEX: Record<string, string> = {
  red: "#e5484d",
  orange: "#f76b15",
  yellow: "#f5d90a",
  green: "#46a758",
  blue: "#0090ff",
  grey: "#6f7680",
};

// Colour names arrive from the service; unknown ones fall back to grey so a
// newer server cannot break rendering.
export function cssFor(colorName: string): string {
  return CSS_HEX[colorName] ?? CSS_HEX["grey"]!;
}
