/**
 * Figure renderer CLI.
 *
 * Usage: ospc-figures --csv sweep.csv --bundle fig5 --out-dir figures/
 *
 * Reads a sweep CSV produced by the solver CLI, renders one SVG per
 * panel of the requested bundle, and exits nonzero on schema mismatch
 * or when a panel filter selects no rows.
 */

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { BUNDLES, bundlePanels } from "./panels.js";
import { renderPanel } from "./render.js";
import { parseSweepCsv, SchemaError } from "./schema.js";

interface Args {
  csv: string;
  bundle: string;
  outDir: string;
}

export function parseArgs(argv: string[]): Args {
  const values = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new Error(`bad argument pair at: ${flag}`);
    }
    values.set(flag.slice(2), value);
  }
  const csv = values.get("csv");
  const bundle = values.get("bundle");
  const outDir = values.get("out-dir");
  if (!csv || !bundle || !outDir) {
    throw new Error("required: --csv <path> --bundle <name> --out-dir <dir>");
  }
  if (!(BUNDLES as readonly string[]).includes(bundle)) {
    throw new Error(`unknown bundle ${bundle}; choose one of ${BUNDLES.join(", ")}`);
  }
  return { csv, bundle, outDir };
}

export function run(args: Args): string[] {
  const rows = parseSweepCsv(readFileSync(args.csv, "utf-8"));
  mkdirSync(args.outDir, { recursive: true });
  const written: string[] = [];
  for (const spec of bundlePanels(args.bundle)) {
    const svg = renderPanel(rows, spec);
    const path = join(args.outDir, `${spec.id}.svg`);
    writeFileSync(path, svg);
    written.push(path);
  }
  return written;
}

export function main(argv: string[]): number {
  try {
    const files = run(parseArgs(argv));
    for (const f of files) console.log(`wrote ${f}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 2;
    }
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js") ?? false;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
