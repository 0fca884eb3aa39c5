/**
 * Heatmap of one value column over the (phi_m, phi_w) dispersion grid.
 * The CSV must contain every grid cell exactly once. Usage:
 *
 *   npx tsx src/plotHeatmap.ts --csv grid.csv --value best_woman_gain \
 *       --out heatmap.png [--title "gain for best-off woman"]
 */

import { parseFlags, required } from "./args.js";
import { colormap } from "./color.js";
import { numericColumn, readCsv } from "./csv.js";
import { BLACK, Raster, WHITE, formatTick } from "./raster.js";
import { textWidth } from "./font.js";

export interface HeatmapOptions {
  csvPath: string;
  valueColumn: string;
  outPath: string;
  title?: string;
  cellSize?: number;
}

export function plotHeatmap(options: HeatmapOptions): void {
  const table = readCsv(options.csvPath);
  const phiM = numericColumn(table, "phi_m");
  const phiW = numericColumn(table, "phi_w");
  const values = numericColumn(table, options.valueColumn);

  const cells = new Map<string, number>();
  const msSet = new Set<number>();
  const wsSet = new Set<number>();
  phiM.forEach((pm, i) => {
    const pw = phiW[i];
    const v = values[i];
    if (pm === null || pw === null) {
      throw new Error(`row ${i + 1} has no dispersion values; heatmaps need a phi grid CSV`);
    }
    if (v === null) {
      throw new Error(`row ${i + 1} has an empty "${options.valueColumn}" cell`);
    }
    msSet.add(pm);
    wsSet.add(pw);
    cells.set(`${pm}|${pw}`, v);
  });
  const ms = [...msSet].sort((a, b) => a - b);
  const ws = [...wsSet].sort((a, b) => a - b);

  const missing: string[] = [];
  for (const pm of ms) {
    for (const pw of ws) {
      if (!cells.has(`${pm}|${pw}`)) missing.push(`(${pm}, ${pw})`);
    }
  }
  if (missing.length > 0) {
    throw new Error(`CSV grid is incomplete; missing cells: ${missing.join(", ")}`);
  }

  const cell = options.cellSize ?? 56;
  const margin = { left: 72, right: 86, top: 28, bottom: 56 };
  const width = margin.left + ms.length * cell + margin.right;
  const height = margin.top + ws.length * cell + margin.bottom;
  const img = new Raster(width, height, WHITE);

  let lo = Infinity;
  let hi = -Infinity;
  for (const v of cells.values()) {
    lo = Math.min(lo, v);
    hi = Math.max(hi, v);
  }
  const scale = hi > lo ? (v: number) => (v - lo) / (hi - lo) : () => 0.5;

  // phi_w increases upward
  ms.forEach((pm, i) => {
    ws.forEach((pw, j) => {
      const v = cells.get(`${pm}|${pw}`)!;
      const x = margin.left + i * cell;
      const y = margin.top + (ws.length - 1 - j) * cell;
      img.fillRect(x, y, cell, cell, colormap(scale(v)));
      const label = formatTick(v);
      const lx = x + cell / 2 - textWidth(label) / 2;
      img.text(lx, y + cell / 2 - 3, label, scale(v) > 0.6 ? BLACK : WHITE);
    });
  });

  ms.forEach((pm, i) => {
    const label = formatTick(pm);
    const x = margin.left + i * cell + cell / 2;
    img.text(x - textWidth(label) / 2, margin.top + ws.length * cell + 8, label);
  });
  ws.forEach((pw, j) => {
    const label = formatTick(pw);
    const y = margin.top + (ws.length - 1 - j) * cell + cell / 2;
    img.text(margin.left - 8 - textWidth(label), y - 3, label);
  });
  img.text(
    margin.left + (ms.length * cell) / 2 - textWidth("phi_m") / 2,
    height - 16,
    "phi_m",
  );
  img.textVertical(10, margin.top + (ws.length * cell) / 2 + textWidth("phi_w") / 2, "phi_w");

  // colorbar
  const barX = margin.left + ms.length * cell + 24;
  const barH = ws.length * cell;
  for (let j = 0; j < barH; j++) {
    const t = 1 - j / (barH - 1);
    img.fillRect(barX, margin.top + j, 14, 1, colormap(t));
  }
  img.text(barX + 18, margin.top - 3, formatTick(hi));
  img.text(barX + 18, margin.top + barH - 4, formatTick(lo));

  img.text(margin.left, 8, options.title ?? options.valueColumn, BLACK);
  img.writePng(options.outPath);
}

export function main(argv: string[]): number {
  try {
    const flags = parseFlags(argv);
    plotHeatmap({
      csvPath: required(flags, "csv"),
      valueColumn: required(flags, "value"),
      outPath: required(flags, "out"),
      title: flags.get("title"),
    });
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

if (process.argv[1] && /plotHeatmap\.(ts|js)$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
