import { readFileSync } from "node:fs";
import { expect, test } from "vitest";
import { parseAnalyticCsv, parseSweepCsv, SWEEP_COLUMNS } from "../src/csv.js";

const SWEEP = readFileSync(new URL("../fixtures/er_prop_vs_c.csv", import.meta.url), "utf8");
const PLOP = readFileSync(new URL("../fixtures/f_plop_er.csv", import.meta.url), "utf8");

test("sweep fixture parses with typed fields", () => {
  const rows = parseSweepCsv(SWEEP, "er_prop_vs_c.csv");
  expect(rows.length).toBe(105);
  const first = rows[0];
  expect(first.model).toBe("er");
  expect(first.regime).toBe("powerlaw:c=0:alpha=1");
  expect(first.axis).toBe("c");
  expect(first.axis_value).toBe(0);
  expect(first.n).toBe(500);
  expect(first.property).toBe("conn");
  expect(first.samples).toBe(50);
  expect(first.p_hat).toBe(0);
  expect(first.ci_high).toBeCloseTo(0.0713500342, 9);
  expect(first.iters).toBe(10000);
  for (const row of rows) {
    expect(row.ci_low).toBeLessThanOrEqual(row.p_hat);
    expect(row.ci_high).toBeGreaterThanOrEqual(row.p_hat);
  }
});

test("header-only sweep csv gives zero rows", () => {
  expect(parseSweepCsv(SWEEP_COLUMNS.join(",") + "\n", "empty.csv")).toEqual([]);
});

test("missing column is named in the error", () => {
  const header = SWEEP_COLUMNS.filter((c) => c !== "ci_high").join(",");
  expect(() => parseSweepCsv(header + "\n", "bad.csv")).toThrow(/bad\.csv: missing column 'ci_high'/);
});

test("non-numeric cell is rejected with its position", () => {
  const lines = SWEEP.trim().split("\n");
  const broken = [lines[0], lines[1].replace(",50,", ",many,")].join("\n");
  expect(() => parseSweepCsv(broken, "bad.csv")).toThrow(/row 1: column 'samples'/);
});

test("analytic fixture parses as x,value points", () => {
  const points = parseAnalyticCsv(PLOP, "f_plop_er.csv");
  expect(points.length).toBe(41);
  expect(points[0]).toEqual({ x: 0, value: 1 });
  expect(points[points.length - 1].x).toBe(2);
  expect(points[points.length - 1].value).toBe(0);
});

test("analytic csv with value2 keeps both columns", () => {
  const points = parseAnalyticCsv("x,value,value2\n0,0.5,0.667\n1,0.5,0.6\n", "pair.csv");
  expect(points[0].value2).toBeCloseTo(0.667, 12);
  expect(points[1].value2).toBeCloseTo(0.6, 12);
});

test("analytic csv without the value column is rejected", () => {
  expect(() => parseAnalyticCsv("x,y\n0,1\n", "bad.csv")).toThrow(/missing column 'value'/);
});
