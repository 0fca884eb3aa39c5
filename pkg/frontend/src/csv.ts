/**
 * Reader for the experiment CSV emitted by the matchgames harness.
 *
 * Schema (fixed header, one row per sweep cell):
 *   game,n,phi_m,phi_w,samples,seed,avg_len,max_len,avg_women_gain,
 *   avg_men_loss,best_woman_gain,worst_man_loss,net_welfare
 *
 * Numeric cells may be empty (impartial-culture rows leave phi_m/phi_w
 * blank); those parse to null.
 */

import { readFileSync } from "fs";

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error("CSV is empty");
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new Error(
        `row ${i + 1} has ${cells.length} cells, expected ${columns.length}`,
      );
    }
    const row: Record<string, string> = {};
    columns.forEach((c, j) => (row[c] = cells[j]));
    return row;
  });
  return { columns, rows };
}

export function readCsv(path: string): Table {
  return parseCsv(readFileSync(path, "utf8"));
}

/** Throws a named error when a requested column is absent. */
export function requireColumn(table: Table, name: string): void {
  if (!table.columns.includes(name)) {
    throw new Error(
      `column "${name}" not found in CSV header: ${table.columns.join(",")}`,
    );
  }
}

export function numericColumn(table: Table, name: string): (number | null)[] {
  requireColumn(table, name);
  return table.rows.map((r) => {
    const cell = r[name];
    if (cell === "") return null;
    const value = Number(cell);
    if (Number.isNaN(value)) {
      throw new Error(`column "${name}" holds non-numeric cell "${cell}"`);
    }
    return value;
  });
}
