/**
 * Figure assembly: select series from parsed rows, build the dump text and the
 * SVG.  The dump inserts the raw CSV substrings verbatim so its numbers are
 * byte-comparable with the input file.
 */

import { methodsIn, parseResultsCsv, type ResultRow } from "./csv.js";
import { renderSvg, type Series } from "./figure.js";

export interface SeriesSpec {
  name: string;
  label: string;
}

export const DEFAULT_LABELS: Record<string, string> = {
  optimized: "Optimized",
  random_irs: "Random-IRS",
  without_irs: "Without-IRS",
  lower_bound: "Lower bound",
};

export class RenderError extends Error {}

export interface FigureOutput {
  svg: string;
  dump: string;
}

export function defaultSeries(rows: ResultRow[]): SeriesSpec[] {
  return methodsIn(rows).map((name) => ({ name, label: DEFAULT_LABELS[name] ?? name }));
}

export function buildFigure(csvText: string, xAxisVariable: string, seriesSpecs?: SeriesSpec[]): FigureOutput {
  const rows = parseResultsCsv(csvText);
  if (rows.length === 0) {
    throw new RenderError("the CSV contains no data rows");
  }
  const available = methodsIn(rows);
  const specs = seriesSpecs && seriesSpecs.length > 0 ? seriesSpecs : defaultSeries(rows);
  const series: Series[] = specs.map((spec) => {
    const selected = rows.filter((r) => r.method === spec.name && r.sweepVariable === xAxisVariable);
    if (selected.length === 0) {
      throw new RenderError(
        `method ${JSON.stringify(spec.name)} has no rows for x=${xAxisVariable}; ` +
          `available methods: ${available.join(", ")}`,
      );
    }
    return { name: spec.name, label: spec.label, rows: selected };
  });

  const dumpLines = series.flatMap((s) =>
    [...s.rows]
      .sort((a, b) => a.sweepValue - b.sweepValue)
      .map((r) => `${s.name},${r.sweepValueRaw},${r.meanPowerDbmRaw},${r.stdPowerDbmRaw}`),
  );
  return {
    svg: renderSvg(series, xAxisVariable),
    dump: dumpLines.join("\n") + "\n",
  };
}
