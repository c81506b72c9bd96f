import { expect, test } from "vitest";
import { bandPath, esc, fmt, lighten, linePath } from "../src/svg.js";

test("fmt trims to at most two decimals", () => {
  expect(fmt(0)).toBe("0");
  expect(fmt(1.5)).toBe("1.5");
  expect(fmt(2.666666)).toBe("2.67");
  expect(fmt(100.0)).toBe("100");
  expect(fmt(0.5)).toBe("0.5");
  expect(fmt(-0.001)).toBe("0");
  expect(fmt(-3.25)).toBe("-3.25");
});

test("line and band paths", () => {
  expect(linePath([[0, 1], [2.5, 3]])).toBe("M0,1L2.5,3");
  expect(bandPath([[0, 0], [1, 0]], [[0, 2], [1, 2]])).toBe("M0,0L1,0L1,2L0,2Z");
});

test("lighten mixes toward white and keeps endpoints", () => {
  expect(lighten("#000000", 0)).toBe("#000000");
  expect(lighten("#000000", 1)).toBe("#ffffff");
  expect(lighten("#2040ff", 0.5)).toBe("#90a0ff");
  expect(lighten("teal", 0.5)).toBe("teal");
});

test("escaping covers markup characters", () => {
  expect(esc(`a<b & "c"`)).toBe("a&lt;b &amp; &quot;c&quot;");
});
