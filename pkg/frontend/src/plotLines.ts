/**
 * Line chart from an experiment CSV: one series per y column over a shared
 * numeric x column. Usage:
 *
 *   npx tsx src/plotLines.ts --csv rows.csv --x n --y avg_len,max_len \
 *       --out chart.png [--title "dynamics length"]
 */

import { parseFlags, required } from "./args.js";
import { SERIES_COLORS } from "./color.js";
import { numericColumn, readCsv, type Table } from "./csv.js";
import { BLACK, GREY, Raster, WHITE, formatTick, ticks } from "./raster.js";
import { textWidth } from "./font.js";

export interface LineChartOptions {
  csvPath: string;
  xColumn: string;
  yColumns: string[];
  outPath: string;
  title?: string;
  width?: number;
  height?: number;
}

interface Series {
  label: string;
  points: [number, number][];
}

function collectSeries(table: Table, xColumn: string, yColumns: string[]): Series[] {
  const xs = numericColumn(table, xColumn);
  return yColumns.map((label) => {
    const ys = numericColumn(table, label);
    const points: [number, number][] = [];
    xs.forEach((x, i) => {
      const y = ys[i];
      if (x !== null && y !== null) points.push([x, y]);
    });
    if (points.length === 0) {
      throw new Error(`no plottable rows for series "${label}"`);
    }
    points.sort((a, b) => a[0] - b[0]);
    return { label, points };
  });
}

export function plotLines(options: LineChartOptions): void {
  const width = options.width ?? 640;
  const height = options.height ?? 420;
  const table = readCsv(options.csvPath);
  const series = collectSeries(table, options.xColumn, options.yColumns);

  const margin = { left: 64, right: 16, top: 28, bottom: 44 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;

  const allX = series.flatMap((s) => s.points.map((p) => p[0]));
  const allY = series.flatMap((s) => s.points.map((p) => p[1]));
  let [x0, x1] = [Math.min(...allX), Math.max(...allX)];
  let [y0, y1] = [Math.min(...allY), Math.max(...allY)];
  if (x0 === x1) [x0, x1] = [x0 - 1, x1 + 1]; // single-point series still render
  if (y0 === y1) [y0, y1] = [y0 - 1, y1 + 1];
  const pad = 0.05 * (y1 - y0);
  [y0, y1] = [y0 - pad, y1 + pad];

  const px = (x: number) => margin.left + ((x - x0) / (x1 - x0)) * plotW;
  const py = (y: number) => margin.top + plotH - ((y - y0) / (y1 - y0)) * plotH;

  const img = new Raster(width, height, WHITE);

  for (const t of ticks(x0, x1)) {
    const x = Math.round(px(t));
    img.line(x, margin.top, x, margin.top + plotH, [235, 235, 235]);
    img.line(x, margin.top + plotH, x, margin.top + plotH + 4, BLACK);
    const label = formatTick(t);
    img.text(x - textWidth(label) / 2, margin.top + plotH + 8, label);
  }
  for (const t of ticks(y0, y1)) {
    const y = Math.round(py(t));
    img.line(margin.left, y, margin.left + plotW, y, [235, 235, 235]);
    img.line(margin.left - 4, y, margin.left, y, BLACK);
    const label = formatTick(t);
    img.text(margin.left - 8 - textWidth(label), y - 3, label);
  }
  // axes on top of the grid
  img.line(margin.left, margin.top, margin.left, margin.top + plotH, BLACK);
  img.line(margin.left, margin.top + plotH, margin.left + plotW, margin.top + plotH, BLACK);

  series.forEach((s, k) => {
    const color = SERIES_COLORS[k % SERIES_COLORS.length];
    for (let i = 1; i < s.points.length; i++) {
      const [ax, ay] = s.points[i - 1];
      const [bx, by] = s.points[i];
      img.thickLine(px(ax), py(ay), px(bx), py(by), color, 1);
    }
    for (const [x, y] of s.points) {
      img.marker(px(x), py(y), color);
    }
    // legend entry, top-left inside the plot area
    const ly = margin.top + 6 + k * 12;
    img.fillRect(margin.left + 8, ly, 10, 7, color);
    img.text(margin.left + 22, ly, s.label);
  });

  img.text(
    margin.left + plotW / 2 - textWidth(options.xColumn) / 2,
    height - 12,
    options.xColumn,
  );
  if (options.title) {
    img.text(margin.left, 8, options.title, BLACK);
  } else {
    img.text(margin.left, 8, options.yColumns.join(", "), GREY);
  }

  img.writePng(options.outPath);
}

export function main(argv: string[]): number {
  try {
    const flags = parseFlags(argv);
    plotLines({
      csvPath: required(flags, "csv"),
      xColumn: required(flags, "x"),
      yColumns: required(flags, "y").split(",").filter((s) => s.length > 0),
      outPath: required(flags, "out"),
      title: flags.get("title"),
    });
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

if (process.argv[1] && /plotLines\.(ts|js)$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
