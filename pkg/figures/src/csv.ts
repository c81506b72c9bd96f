import Papa from "papaparse";

// Column set of the sweep CSVs the estimator writes. Order is not
// significant here; presence is.
export const SWEEP_COLUMNS = [
  "model",
  "regime",
  "axis",
  "axis_value",
  "n",
  "property",
  "samples",
  "successes",
  "p_hat",
  "ci_low",
  "ci_high",
  "seed",
  "iters",
] as const;

export interface SweepRow {
  model: string;
  regime: string;
  axis: string;
  axis_value: number;
  n: number;
  property: string;
  samples: number;
  successes: number;
  p_hat: number;
  ci_low: number;
  ci_high: number;
  seed: number;
  iters: number;
}

const NUMERIC_COLUMNS = [
  "axis_value",
  "n",
  "samples",
  "successes",
  "p_hat",
  "ci_low",
  "ci_high",
  "seed",
  "iters",
] as const;

function parseTable(text: string, name: string) {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    const where = e.row === undefined ? "" : ` at row ${e.row + 1}`;
    throw new Error(`${name}: malformed csv${where}: ${e.message}`);
  }
  return parsed;
}

function toNumber(raw: string | undefined, column: string, row: number, name: string): number {
  const v = Number(raw);
  if (raw === undefined || raw === "" || !Number.isFinite(v)) {
    throw new Error(`${name}: row ${row}: column '${column}' is not numeric (got ${JSON.stringify(raw)})`);
  }
  return v;
}

/** Parse one estimator CSV. Header-only input yields an empty list. */
export function parseSweepCsv(text: string, name: string): SweepRow[] {
  const parsed = parseTable(text, name);
  const fields = parsed.meta.fields ?? [];
  for (const column of SWEEP_COLUMNS) {
    if (!fields.includes(column)) {
      throw new Error(`${name}: missing column '${column}' (header was: ${fields.join(",") || "empty"})`);
    }
  }
  return parsed.data.map((raw, i) => {
    const row: Record<string, string | number> = {
      model: raw.model,
      regime: raw.regime,
      axis: raw.axis,
      property: raw.property,
    };
    for (const column of NUMERIC_COLUMNS) {
      row[column] = toNumber(raw[column], column, i + 1, name);
    }
    return row as unknown as SweepRow;
  });
}

export interface AnalyticPoint {
  x: number;
  value: number;
  value2?: number;
}

/** Parse a closed-form curve CSV: x,value with an optional value2. */
export function parseAnalyticCsv(text: string, name: string): AnalyticPoint[] {
  const parsed = parseTable(text, name);
  const fields = parsed.meta.fields ?? [];
  for (const column of ["x", "value"]) {
    if (!fields.includes(column)) {
      throw new Error(`${name}: missing column '${column}' (header was: ${fields.join(",") || "empty"})`);
    }
  }
  const hasSecond = fields.includes("value2");
  return parsed.data.map((raw, i) => {
    const point: AnalyticPoint = {
      x: toNumber(raw.x, "x", i + 1, name),
      value: toNumber(raw.value, "value", i + 1, name),
    };
    if (hasSecond) {
      point.value2 = toNumber(raw.value2, "value2", i + 1, name);
    }
    return point;
  });
}
