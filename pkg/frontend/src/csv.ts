/**
 * Parser for the harness result CSV.
 *
 * Fields are kept as the raw substrings from the file alongside their numeric
 * interpretations: the dump mode must reproduce the file's bytes exactly, so
 * nothing is ever re-formatted.
 */

export const EXPECTED_HEADER =
  "sweep_variable,sweep_value,method,mean_power_dbm,std_power_dbm,trials,mean_iterations,seed";

export interface ResultRow {
  sweepVariable: string;
  sweepValueRaw: string;
  sweepValue: number;
  method: string;
  meanPowerDbmRaw: string;
  meanPowerDbm: number;
  stdPowerDbmRaw: string;
  stdPowerDbm: number;
  trials: number;
  meanIterations: number;
  seed: string;
}

export class CsvFormatError extends Error {}

export function parseResultsCsv(text: string): ResultRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0 || lines[0] !== EXPECTED_HEADER) {
    throw new CsvFormatError(
      `unexpected header: got ${JSON.stringify(lines[0] ?? "")}, want ${JSON.stringify(EXPECTED_HEADER)}`,
    );
  }
  return lines.slice(1).map((line, index) => {
    const parts = line.split(",");
    if (parts.length !== 8) {
      throw new CsvFormatError(`line ${index + 2}: expected 8 fields, got ${parts.length}`);
    }
    const [sweepVariable, sweepValueRaw, method, meanRaw, stdRaw, trialsRaw, itersRaw, seed] = parts;
    const row: ResultRow = {
      sweepVariable,
      sweepValueRaw,
      sweepValue: Number(sweepValueRaw),
      method,
      meanPowerDbmRaw: meanRaw,
      meanPowerDbm: Number(meanRaw),
      stdPowerDbmRaw: stdRaw,
      stdPowerDbm: Number(stdRaw),
      trials: Number(trialsRaw),
      meanIterations: Number(itersRaw),
      seed,
    };
    if (!Number.isFinite(row.sweepValue) || !Number.isFinite(row.trials)) {
      throw new CsvFormatError(`line ${index + 2}: non-numeric sweep value or trial count`);
    }
    return row;
  });
}

export function methodsIn(rows: ResultRow[]): string[] {
  return [...new Set(rows.map((r) => r.method))];
}
