// String-level SVG helpers. Coordinates are rounded to a fixed
// precision so a rerun over the same inputs emits identical bytes.

export function fmt(v: number): string {
  let s = v.toFixed(2).replace(/\.?0+$/, "");
  if (s === "" || s === "-0") s = "0";
  return s;
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function linePath(points: Array<[number, number]>): string {
  return points
    .map(([x, y], i) => `${i === 0 ? "M" : "L"}${fmt(x)},${fmt(y)}`)
    .join("");
}

/** Closed band: upper edge forward, lower edge back. */
export function bandPath(upper: Array<[number, number]>, lower: Array<[number, number]>): string {
  const back = [...lower].reverse();
  return linePath(upper) + back.map(([x, y]) => `L${fmt(x)},${fmt(y)}`).join("") + "Z";
}

/** Mix a #rrggbb color toward white; t in [0, 1]. */
export function lighten(color: string, t: number): string {
  const m = /^#([0-9a-fA-F]{6})$/.exec(color);
  if (!m) return color;
  const channels = [0, 2, 4].map((off) => {
    const c = parseInt(m[1].slice(off, off + 2), 16);
    return Math.round(c + (255 - c) * t);
  });
  return "#" + channels.map((c) => c.toString(16).padStart(2, "0")).join("");
}

export function tag(name: string, attrs: Record<string, string | number>, body?: string): string {
  const rendered = Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${typeof v === "number" ? fmt(v) : esc(v)}"`)
    .join("");
  if (body === undefined) return `<${name}${rendered}/>`;
  return `<${name}${rendered}>${body}</${name}>`;
}
