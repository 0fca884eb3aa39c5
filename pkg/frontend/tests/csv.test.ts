import { describe, expect, it } from "vitest";

import { numericColumn, parseCsv, requireColumn } from "../src/csv.js";

const SAMPLE = `game,n,phi_m,phi_w,avg_len
accomplice,5,,,0.25
accomplice,10,0.2,0.4,1.5
`;

describe("parseCsv", () => {
  it("splits header and rows", () => {
    const table = parseCsv(SAMPLE);
    expect(table.columns).toEqual(["game", "n", "phi_m", "phi_w", "avg_len"]);
    expect(table.rows).toHaveLength(2);
    expect(table.rows[1].phi_w).toBe("0.4");
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1,2,3\n")).toThrow(/row 1 has 3 cells/);
  });

  it("rejects empty input", () => {
    expect(() => parseCsv("")).toThrow(/empty/);
  });
});

describe("numericColumn", () => {
  it("parses numbers and maps empty cells to null", () => {
    const table = parseCsv(SAMPLE);
    expect(numericColumn(table, "phi_m")).toEqual([null, 0.2]);
    expect(numericColumn(table, "avg_len")).toEqual([0.25, 1.5]);
  });

  it("names the missing column", () => {
    const table = parseCsv(SAMPLE);
    expect(() => requireColumn(table, "median_len")).toThrow(/"median_len" not found/);
    expect(() => numericColumn(table, "nope")).toThrow(/"nope" not found/);
  });

  it("rejects non-numeric cells", () => {
    const table = parseCsv(SAMPLE);
    expect(() => numericColumn(table, "game")).toThrow(/non-numeric/);
  });
});
