/**
 * The `plot` command: parse flags, read the CSV, write the SVG.
 * Kept separate from the executable entry point so tests can call it
 * in-process.
 */

import { parseArgs } from "node:util";
import { readFileSync, writeFileSync } from "node:fs";
import { FIGURE_KINDS, render, type FigureKind } from "./render.js";

export class UsageError extends Error {}

const USAGE =
  "usage: ris-ra-plot plot --in <results.csv> " +
  `--kind <${FIGURE_KINDS.join("|")}> [--out <figure.svg>]`;

/** Run `plot` with raw flag arguments; returns the output path. */
export function runPlot(args: string[]): string {
  const { values } = parseArgs({
    args,
    options: {
      in: { type: "string" },
      kind: { type: "string" },
      out: { type: "string" },
    },
  });
  if (values.in === undefined) {
    throw new UsageError(`--in is required\n${USAGE}`);
  }
  if (values.kind === undefined) {
    throw new UsageError(`--kind is required\n${USAGE}`);
  }
  if (!(FIGURE_KINDS as readonly string[]).includes(values.kind)) {
    throw new UsageError(
      `unknown kind "${values.kind}", expected one of ${FIGURE_KINDS.join(", ")}`,
    );
  }
  const kind = values.kind as FigureKind;
  const out = values.out ?? `${kind}.svg`;
  if (!out.endsWith(".svg")) {
    throw new UsageError(
      `only .svg output is supported, got "${out}"; ` +
        "write the SVG and rasterize externally if another format is needed",
    );
  }
  const text = readFileSync(values.in, "utf8");
  const svg = render(kind, text);
  writeFileSync(out, svg);
  return out;
}

/** CLI entry: returns the process exit code (0 ok, 2 on any error). */
export function main(argv: string[]): number {
  try {
    const [cmd, ...rest] = argv;
    if (cmd !== "plot") {
      throw new UsageError(cmd === undefined ? USAGE : `unknown command "${cmd}"\n${USAGE}`);
    }
    const out = runPlot(rest);
    process.stdout.write(`wrote ${out}\n`);
    return 0;
  } catch (err) {
    const msg = err instanceof Error ? err.message : String(err);
    process.stderr.write(`error: ${msg}\n`);
    return 2;
  }
}
