import { readFileSync, writeFileSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { parseAnalyticCsv, parseSweepCsv } from "./csv.js";
import type { SweepRow } from "./csv.js";
import { parseFigureSpec } from "./schema.js";
import { render } from "./render.js";
import type { OverlayData } from "./render.js";

const USAGE = "usage: render --spec FIGURE.json [--out FIGURE.svg]";

interface Args {
  spec: string;
  out?: string;
}

function parseArgs(argv: string[]): Args {
  let spec: string | undefined;
  let out: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--spec" && i + 1 < argv.length) spec = argv[++i];
    else if (argv[i] === "--out" && i + 1 < argv.length) out = argv[++i];
    else throw new Error(`unexpected argument '${argv[i]}'`);
  }
  if (spec === undefined) throw new Error("--spec is required");
  return { spec, out };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`${(err as Error).message}\n${USAGE}`);
    return 2;
  }

  try {
    const specText = readFileSync(args.spec, "utf8");
    let doc: unknown;
    try {
      doc = JSON.parse(specText);
    } catch (err) {
      throw new Error(`${args.spec}: not valid JSON: ${(err as Error).message}`);
    }
    const spec = parseFigureSpec(doc);

    // --out wins over the spec's own output path; the latter is taken
    // relative to the spec file like every other path in it.
    const base = dirname(args.spec);
    const out = args.out ?? (spec.out === undefined ? undefined : resolve(base, spec.out));
    if (out === undefined) {
      console.error(`no output path: pass --out or set 'out' in the spec\n${USAGE}`);
      return 2;
    }

    const rows: SweepRow[] = [];
    for (const path of spec.input) {
      const full = resolve(base, path);
      rows.push(...parseSweepCsv(readFileSync(full, "utf8"), path));
    }
    const overlays: OverlayData[] = spec.overlays.map((o) => ({
      spec: o,
      points: parseAnalyticCsv(readFileSync(resolve(base, o.path), "utf8"), o.path),
    }));

    const result = render(spec, rows, overlays);
    if (result.points !== result.rows) {
      throw new Error(`internal: plotted ${result.points} points from ${result.rows} rows`);
    }
    writeFileSync(out, result.svg);
    console.log(
      `wrote ${out}: ${result.curves} curves, ${result.points} points from ` +
        `${result.rows} csv rows, ${result.overlays} overlays`,
    );
    return 0;
  } catch (err) {
    console.error((err as Error).message);
    return 1;
  }
}
