#!/usr/bin/env node
/**
 * render --csv <path> --x <sweep variable> --out <svg path>
 *        [--series name:label ...] [--dump]
 *
 * --dump prints the plotted (series, x, y, err) tuples with the CSV's exact
 * number formatting, one per line, to stdout.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { buildFigure, RenderError, type SeriesSpec } from "./render.js";
import { CsvFormatError } from "./csv.js";

export function main(argv: string[]): number {
  if (argv[0] !== "render") {
    process.stderr.write("usage: irspower-render render --csv <path> --x <var> --out <path> [--series name:label ...] [--dump]\n");
    return 1;
  }
  let parsed;
  try {
    parsed = parseArgs({
      args: argv.slice(1),
      options: {
        csv: { type: "string" },
        x: { type: "string" },
        out: { type: "string" },
        series: { type: "string", multiple: true },
        dump: { type: "boolean", default: false },
      },
    });
  } catch (err) {
    process.stderr.write(`argument error: ${(err as Error).message}\n`);
    return 1;
  }
  const { csv, x, out, series, dump } = parsed.values;
  if (!csv || !x) {
    process.stderr.write("render requires --csv and --x\n");
    return 1;
  }
  const specs: SeriesSpec[] | undefined = series?.map((s) => {
    const idx = s.indexOf(":");
    return idx < 0 ? { name: s, label: s } : { name: s.slice(0, idx), label: s.slice(idx + 1) };
  });

  let text: string;
  try {
    text = readFileSync(csv, "utf8");
  } catch (err) {
    process.stderr.write(`cannot read ${csv}: ${(err as Error).message}\n`);
    return 1;
  }
  try {
    const figure = buildFigure(text, x, specs);
    if (dump) {
      process.stdout.write(figure.dump);
    }
    if (out) {
      writeFileSync(out, figure.svg);
    }
    return 0;
  } catch (err) {
    if (err instanceof RenderError || err instanceof CsvFormatError) {
      process.stderr.write(`${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js") || process.argv[1]?.endsWith("cli.ts");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
