/**
 * Deterministic SVG line figure with error bars.
 *
 * No plotting library: the output must be stable byte-for-byte for identical
 * input, and the quantities plotted come straight from the parsed rows.
 */

import type { ResultRow } from "./csv.js";

export interface Series {
  name: string;
  label: string;
  rows: ResultRow[];
}

const WIDTH = 640;
const HEIGHT = 440;
const MARGIN = { left: 70, right: 20, top: 20, bottom: 52 };
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"];
const MARKERS = ["circle", "square", "diamond", "triangle"] as const;

const AXIS_LABELS: Record<string, string> = {
  n_irs_units: "Number of IRS units",
  k_users: "Number of users",
  m_antennas: "Number of BS antennas",
};

function fmt(x: number): string {
  return Number(x.toFixed(3)).toString();
}

function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step0 = span / Math.max(count - 1, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const step = [1, 2, 2.5, 5, 10].map((m) => m * mag).find((s) => span / s <= count) ?? 10 * mag;
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-9; v += step) ticks.push(Number(v.toFixed(9)));
  return ticks;
}

function marker(kind: (typeof MARKERS)[number], x: number, y: number, color: string): string {
  const r = 3.5;
  switch (kind) {
    case "circle":
      return `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${color}"/>`;
    case "square":
      return `<rect x="${fmt(x - r)}" y="${fmt(y - r)}" width="${2 * r}" height="${2 * r}" fill="${color}"/>`;
    case "diamond":
      return `<path d="M ${fmt(x)} ${fmt(y - r - 1)} L ${fmt(x + r + 1)} ${fmt(y)} L ${fmt(x)} ${fmt(
        y + r + 1,
      )} L ${fmt(x - r - 1)} ${fmt(y)} Z" fill="${color}"/>`;
    case "triangle":
      return `<path d="M ${fmt(x)} ${fmt(y - r - 1)} L ${fmt(x + r + 1)} ${fmt(y + r)} L ${fmt(
        x - r - 1,
      )} ${fmt(y + r)} Z" fill="${color}"/>`;
  }
}

export function renderSvg(series: Series[], xAxisVariable: string, yLabel = "Transmit power (dBm)"): string {
  const all = series.flatMap((s) => s.rows);
  const xs = all.map((r) => r.sweepValue);
  const ys = all.flatMap((r) => [r.meanPowerDbm - r.stdPowerDbm, r.meanPowerDbm + r.stdPowerDbm]);
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yPad = 0.05 * (Math.max(...ys) - Math.min(...ys) || 1);
  const yLo = Math.min(...ys) - yPad;
  const yHi = Math.max(...ys) + yPad;

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (v: number) => MARGIN.left + (xHi === xLo ? 0.5 : (v - xLo) / (xHi - xLo)) * plotW;
  const sy = (v: number) => MARGIN.top + (1 - (v - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  for (const t of niceTicks(yLo, yHi)) {
    const y = sy(t);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${WIDTH - MARGIN.right}" y2="${fmt(y)}" stroke="#dddddd"/>`,
    );
    parts.push(`<text x="${MARGIN.left - 8}" y="${fmt(y + 4)}" text-anchor="end">${fmt(t)}</text>`);
  }
  const xTicks = [...new Set(all.map((r) => r.sweepValue))].sort((a, b) => a - b);
  for (const t of xTicks) {
    const x = sx(t);
    parts.push(
      `<line x1="${fmt(x)}" y1="${MARGIN.top}" x2="${fmt(x)}" y2="${HEIGHT - MARGIN.bottom}" stroke="#eeeeee"/>`,
    );
    parts.push(`<text x="${fmt(x)}" y="${HEIGHT - MARGIN.bottom + 18}" text-anchor="middle">${t}</text>`);
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333333"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle">${
      AXIS_LABELS[xAxisVariable] ?? xAxisVariable
    }</text>`,
  );
  parts.push(
    `<text transform="translate(16 ${MARGIN.top + plotH / 2}) rotate(-90)" text-anchor="middle">${yLabel}</text>`,
  );

  series.forEach((s, i) => {
    const color = COLORS[i % COLORS.length];
    const mk = MARKERS[i % MARKERS.length];
    const pts = [...s.rows].sort((a, b) => a.sweepValue - b.sweepValue);
    const path = pts.map((r) => `${fmt(sx(r.sweepValue))},${fmt(sy(r.meanPowerDbm))}`).join(" ");
    parts.push(`<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1.8"/>`);
    for (const r of pts) {
      const x = sx(r.sweepValue);
      if (r.stdPowerDbm > 0) {
        const yTop = sy(r.meanPowerDbm + r.stdPowerDbm);
        const yBot = sy(r.meanPowerDbm - r.stdPowerDbm);
        parts.push(
          `<line x1="${fmt(x)}" y1="${fmt(yTop)}" x2="${fmt(x)}" y2="${fmt(yBot)}" stroke="${color}"/>`,
        );
        for (const yCap of [yTop, yBot]) {
          parts.push(
            `<line x1="${fmt(x - 4)}" y1="${fmt(yCap)}" x2="${fmt(x + 4)}" y2="${fmt(yCap)}" stroke="${color}"/>`,
          );
        }
      }
      parts.push(marker(mk, x, sy(r.meanPowerDbm), color));
    }
  });

  series.forEach((s, i) => {
    const color = COLORS[i % COLORS.length];
    const y = MARGIN.top + 16 + 18 * i;
    const x = MARGIN.left + 12;
    parts.push(`<line x1="${x}" y1="${fmt(y - 4)}" x2="${x + 26}" y2="${fmt(y - 4)}" stroke="${color}" stroke-width="1.8"/>`);
    parts.push(marker(MARKERS[i % MARKERS.length], x + 13, y - 4, color));
    parts.push(`<text x="${x + 32}" y="${fmt(y)}">${s.label}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
