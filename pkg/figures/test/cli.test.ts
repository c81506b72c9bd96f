import { execFileSync } from "node:child_process";
import { copyFileSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { fileURLToPath } from "node:url";
import { join } from "node:path";
import { afterEach, expect, test, vi } from "vitest";
import { main } from "../src/main.js";

const PKG = fileURLToPath(new URL("..", import.meta.url));
const FIXTURES = join(PKG, "fixtures");

afterEach(() => {
  vi.restoreAllMocks();
});

function workdir(): string {
  const dir = mkdtempSync(join(tmpdir(), "figures-"));
  for (const name of ["er_prop_vs_c.csv", "f_plop_er.csv", "f_forest_er.csv"]) {
    copyFileSync(join(FIXTURES, name), join(dir, name));
  }
  return dir;
}

const SPEC = {
  title: "properties against c",
  xLabel: "c",
  yLabel: "probability",
  input: ["er_prop_vs_c.csv"],
  overlays: [
    { path: "f_plop_er.csv", curve: "plop limit" },
    { path: "f_forest_er.csv", curve: "forest limit", color: "#aaaaaa" },
  ],
};

function writeSpec(dir: string, spec: unknown): string {
  const path = join(dir, "figure.json");
  writeFileSync(path, JSON.stringify(spec));
  return path;
}

test("renders a figure and reports the point count", () => {
  const log = vi.spyOn(console, "log").mockImplementation(() => {});
  const dir = workdir();
  const out = join(dir, "fig.svg");
  expect(main(["--spec", writeSpec(dir, SPEC), "--out", out])).toBe(0);
  const svg = readFileSync(out, "utf8");
  expect(svg.startsWith("<svg ")).toBe(true);
  expect((svg.match(/class="curve"/g) ?? []).length).toBe(5);
  expect(log).toHaveBeenCalledOnce();
  expect(log.mock.calls[0][0]).toContain("105 points from 105 csv rows");
});

test("falls back to the spec's own output path", () => {
  vi.spyOn(console, "log").mockImplementation(() => {});
  const dir = workdir();
  expect(main(["--spec", writeSpec(dir, { ...SPEC, out: "own.svg" })])).toBe(0);
  expect(readFileSync(join(dir, "own.svg"), "utf8")).toContain("</svg>");
});

test("usage errors exit 2", () => {
  const err = vi.spyOn(console, "error").mockImplementation(() => {});
  expect(main([])).toBe(2);
  expect(main(["--spec"])).toBe(2);
  expect(main(["--mystery", "x"])).toBe(2);
  const dir = workdir();
  expect(main(["--spec", writeSpec(dir, SPEC)])).toBe(2); // no output path anywhere
  expect(err.mock.calls.some((c) => String(c[0]).includes("usage:"))).toBe(true);
});

test("read and schema failures exit 1 with a message", () => {
  const err = vi.spyOn(console, "error").mockImplementation(() => {});
  const dir = workdir();

  expect(main(["--spec", join(dir, "absent.json"), "--out", join(dir, "o.svg")])).toBe(1);

  const badJson = join(dir, "bad.json");
  writeFileSync(badJson, "{nope");
  expect(main(["--spec", badJson, "--out", join(dir, "o.svg")])).toBe(1);

  expect(main(["--spec", writeSpec(dir, { ...SPEC, format: "png" }), "--out", join(dir, "o.svg")])).toBe(1);

  expect(
    main(["--spec", writeSpec(dir, { ...SPEC, input: ["absent.csv"] }), "--out", join(dir, "o.svg")]),
  ).toBe(1);

  const sweep = readFileSync(join(dir, "er_prop_vs_c.csv"), "utf8");
  writeFileSync(join(dir, "er_prop_vs_c.csv"), sweep.replace("p_hat", "rate"));
  expect(main(["--spec", writeSpec(dir, SPEC), "--out", join(dir, "o.svg")])).toBe(1);
  expect(err.mock.calls.some((c) => String(c[0]).includes("missing column 'p_hat'"))).toBe(true);
});

test("header-only csv still renders axes and exits 0", () => {
  const log = vi.spyOn(console, "log").mockImplementation(() => {});
  const dir = workdir();
  const header = readFileSync(join(dir, "er_prop_vs_c.csv"), "utf8").split("\n")[0];
  writeFileSync(join(dir, "empty.csv"), header + "\n");
  const out = join(dir, "fig.svg");
  expect(main(["--spec", writeSpec(dir, { ...SPEC, input: ["empty.csv"], overlays: [] }), "--out", out])).toBe(0);
  const svg = readFileSync(out, "utf8");
  expect(svg).not.toContain('class="curve"');
  expect(svg).toContain("<line");
  expect(log.mock.calls[0][0]).toContain("0 points from 0 csv rows");
});

test("the render executable works as a subprocess", () => {
  const dir = workdir();
  const out = join(dir, "fig.svg");
  const stdout = execFileSync(join(PKG, "render"), ["--spec", writeSpec(dir, SPEC), "--out", out], {
    encoding: "utf8",
  });
  expect(stdout).toContain("105 points from 105 csv rows");
  expect(readFileSync(out, "utf8")).toContain("</svg>");

  writeFileSync(join(dir, "figure.json"), "{nope");
  let status = 0;
  try {
    execFileSync(join(PKG, "render"), ["--spec", join(dir, "figure.json"), "--out", out], {
      encoding: "utf8",
      stdio: "pipe",
    });
  } catch (err) {
    status = (err as { status: number }).status;
  }
  expect(status).toBe(1);
});
