// FigureSpec: the JSON document `render --spec` consumes. See the
// package README for the written-out schema.

export interface CurveStyle {
  color?: string;
  label?: string;
}

export interface OverlaySpec {
  path: string;
  curve: string;
  column: "value" | "value2";
  color: string;
  dash: boolean;
}

export interface FigureSpec {
  input: string[];
  styles: Record<string, CurveStyle>;
  overlays: OverlaySpec[];
  title?: string;
  xLabel: string;
  yLabel: string;
  out?: string;
  format: "svg";
  width: number;
  height: number;
}

const TOP_KEYS = new Set([
  "input",
  "styles",
  "overlays",
  "title",
  "xLabel",
  "yLabel",
  "out",
  "format",
  "width",
  "height",
]);

function fail(message: string): never {
  throw new Error(`figure spec: ${message}`);
}

function wantString(value: unknown, what: string): string {
  if (typeof value !== "string" || value === "") fail(`${what} must be a nonempty string`);
  return value;
}

function wantSize(value: unknown, what: string, fallback: number): number {
  if (value === undefined) return fallback;
  if (typeof value !== "number" || !Number.isFinite(value) || value <= 0) {
    fail(`${what} must be a positive number`);
  }
  return value;
}

function parseStyles(value: unknown): Record<string, CurveStyle> {
  if (value === undefined) return {};
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    fail("styles must be an object mapping property names to {color, label}");
  }
  const out: Record<string, CurveStyle> = {};
  for (const [prop, raw] of Object.entries(value)) {
    if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
      fail(`styles.${prop} must be an object`);
    }
    const style: CurveStyle = {};
    for (const [key, v] of Object.entries(raw)) {
      if (key === "color") style.color = wantString(v, `styles.${prop}.color`);
      else if (key === "label") style.label = wantString(v, `styles.${prop}.label`);
      else fail(`styles.${prop} has unknown key '${key}'`);
    }
    out[prop] = style;
  }
  return out;
}

function parseOverlay(raw: unknown, i: number): OverlaySpec {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    fail(`overlays[${i}] must be an object`);
  }
  const entry = raw as Record<string, unknown>;
  for (const key of Object.keys(entry)) {
    if (!["path", "curve", "column", "color", "dash"].includes(key)) {
      fail(`overlays[${i}] has unknown key '${key}'`);
    }
  }
  const column = entry.column === undefined ? "value" : entry.column;
  if (column !== "value" && column !== "value2") {
    fail(`overlays[${i}].column must be 'value' or 'value2'`);
  }
  if (entry.dash !== undefined && typeof entry.dash !== "boolean") {
    fail(`overlays[${i}].dash must be a boolean`);
  }
  return {
    path: wantString(entry.path, `overlays[${i}].path`),
    curve: wantString(entry.curve, `overlays[${i}].curve`),
    column,
    color: entry.color === undefined ? "#777777" : wantString(entry.color, `overlays[${i}].color`),
    dash: entry.dash === undefined ? true : entry.dash,
  };
}

export function parseFigureSpec(json: unknown): FigureSpec {
  if (typeof json !== "object" || json === null || Array.isArray(json)) {
    fail("top level must be an object");
  }
  const doc = json as Record<string, unknown>;
  for (const key of Object.keys(doc)) {
    if (!TOP_KEYS.has(key)) fail(`unknown key '${key}'`);
  }
  if (!Array.isArray(doc.input) || doc.input.length === 0) {
    fail("input must be a nonempty array of csv paths");
  }
  const input = doc.input.map((p, i) => wantString(p, `input[${i}]`));
  if (doc.format !== undefined && doc.format !== "svg") {
    fail(`format ${JSON.stringify(doc.format)} is not supported (only 'svg')`);
  }
  const overlaysRaw = doc.overlays === undefined ? [] : doc.overlays;
  if (!Array.isArray(overlaysRaw)) fail("overlays must be an array");
  return {
    input,
    styles: parseStyles(doc.styles),
    overlays: overlaysRaw.map(parseOverlay),
    title: doc.title === undefined ? undefined : wantString(doc.title, "title"),
    xLabel: wantString(doc.xLabel, "xLabel"),
    yLabel: wantString(doc.yLabel, "yLabel"),
    out: doc.out === undefined ? undefined : wantString(doc.out, "out"),
    format: "svg",
    width: wantSize(doc.width, "width", 640),
    height: wantSize(doc.height, "height", 400),
  };
}
