/**
 * Figure fidelity on the committed sweep fixtures (regenerate them with
 * `python3 scripts/make_figure_fixtures.py`; they are byte-reproducible).
 *
 * For each fixture the dump output must quote the CSV's own number substrings
 * verbatim, and the SVG must render without error.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { parseResultsCsv } from "../src/csv.js";
import { buildFigure } from "../src/render.js";

const FIXTURES = join(__dirname, "..", "fixtures");

const CASES: Array<{ file: string; x: string }> = [
  { file: "n_sweep_k1.csv", x: "n_irs_units" },
  { file: "m_sweep.csv", x: "m_antennas" },
  { file: "k_sweep.csv", x: "k_users" },
];

describe.each(CASES)("fixture $file", ({ file, x }) => {
  const text = readFileSync(join(FIXTURES, file), "utf8");

  it("dump is byte-identical to the CSV fields it plots", () => {
    const rows = parseResultsCsv(text);
    const { dump } = buildFigure(text, x);
    const dumpLines = dump.trimEnd().split("\n");
    expect(dumpLines).toHaveLength(rows.length);
    const byKey = new Map(dumpLines.map((line) => [line.split(",").slice(0, 2).join(","), line]));
    for (const line of text.trimEnd().split("\n").slice(1)) {
      const fields = line.split(",");
      const key = `${fields[2]},${fields[1]}`;
      const expected = `${fields[2]},${fields[1]},${fields[3]},${fields[4]}`;
      expect(byKey.get(key)).toBe(expected);
    }
  });

  it("produces an SVG with one series per method", () => {
    const rows = parseResultsCsv(text);
    const methods = new Set(rows.map((r) => r.method));
    const { svg } = buildFigure(text, x);
    expect((svg.match(/<polyline /g) ?? []).length).toBe(methods.size);
    expect(svg).toContain("Transmit power (dBm)");
  });

  it("bound curve sits below the optimized curve when present", () => {
    const rows = parseResultsCsv(text);
    const bound = rows.filter((r) => r.method === "lower_bound");
    for (const b of bound) {
      const opt = rows.find((r) => r.method === "optimized" && r.sweepValue === b.sweepValue);
      expect(opt).toBeDefined();
      expect(opt!.meanPowerDbm).toBeGreaterThanOrEqual(b.meanPowerDbm);
    }
  });
});
