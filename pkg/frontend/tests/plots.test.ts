import { mkdtempSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { PNG } from "pngjs";
import { describe, expect, it } from "vitest";

import { main as heatmapMain, plotHeatmap } from "../src/plotHeatmap.js";
import { main as linesMain, plotLines } from "../src/plotLines.js";

const TESTDATA = join(__dirname, "..", "testdata");
const tmp = mkdtempSync(join(tmpdir(), "plots-"));

const PNG_SIGNATURE = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);

function decode(path: string): PNG {
  const buffer = readFileSync(path);
  expect(buffer.subarray(0, 8).equals(PNG_SIGNATURE)).toBe(true);
  return PNG.sync.read(buffer);
}

function distinctColors(png: PNG): Set<string> {
  const seen = new Set<string>();
  for (let i = 0; i < png.data.length; i += 4) {
    seen.add(`${png.data[i]},${png.data[i + 1]},${png.data[i + 2]}`);
  }
  return seen;
}

describe("plotLines", () => {
  it("renders the length study CSV produced by the harness", () => {
    const out = join(tmp, "length.png");
    plotLines({
      csvPath: join(TESTDATA, "length_by_n.csv"),
      xColumn: "n",
      yColumns: ["avg_len", "max_len"],
      outPath: out,
    });
    const png = decode(out);
    expect(png.width).toBe(640);
    expect(png.height).toBe(420);
    // both series colors made it onto the canvas
    expect(distinctColors(png).size).toBeGreaterThan(4);
  });

  it("welfare columns plot the same way", () => {
    const out = join(tmp, "welfare_lines.png");
    plotLines({
      csvPath: join(TESTDATA, "length_by_n.csv"),
      xColumn: "n",
      yColumns: ["net_welfare"],
      outPath: out,
    });
    decode(out);
  });

  it("survives a single-row CSV", () => {
    const csv = join(tmp, "single.csv");
    writeFileSync(csv, "n,avg_len\n5,0.4\n");
    const out = join(tmp, "single.png");
    plotLines({ csvPath: csv, xColumn: "n", yColumns: ["avg_len"], outPath: out });
    decode(out);
  });

  it("names a missing column", () => {
    expect(() =>
      plotLines({
        csvPath: join(TESTDATA, "length_by_n.csv"),
        xColumn: "n",
        yColumns: ["median_len"],
        outPath: join(tmp, "nope.png"),
      }),
    ).toThrow(/"median_len" not found/);
  });

  it("cli exits 0 on success and 1 on error", () => {
    const out = join(tmp, "cli.png");
    expect(
      linesMain([
        "--csv",
        join(TESTDATA, "length_by_n.csv"),
        "--x",
        "n",
        "--y",
        "avg_len,max_len",
        "--out",
        out,
      ]),
    ).toBe(0);
    decode(out);
    expect(linesMain(["--csv", "/nonexistent.csv", "--x", "n", "--y", "a", "--out", out])).toBe(1);
  });
});

describe("plotHeatmap", () => {
  it("renders the 6x6 dispersion grid produced by the harness", () => {
    const out = join(tmp, "grid.png");
    plotHeatmap({
      csvPath: join(TESTDATA, "welfare_grid.csv"),
      valueColumn: "best_woman_gain",
      outPath: out,
    });
    const png = decode(out);
    // 6x6 cells of 56px plus margins
    expect(png.width).toBe(72 + 6 * 56 + 86);
    expect(png.height).toBe(28 + 6 * 56 + 56);
    expect(distinctColors(png).size).toBeGreaterThan(8);
  });

  it("a constant-value grid renders uniformly", () => {
    const csv = join(tmp, "const.csv");
    const lines = ["phi_m,phi_w,score"];
    for (const pm of [0, 0.5]) for (const pw of [0, 0.5]) lines.push(`${pm},${pw},3`);
    writeFileSync(csv, lines.join("\n") + "\n");
    const out = join(tmp, "const.png");
    plotHeatmap({ csvPath: csv, valueColumn: "score", outPath: out });
    const png = decode(out);
    // midpoint color dominates the cell area: exactly one colormap color
    // appears in the cell interiors (plus text/axes/background shades)
    const colors = distinctColors(png);
    expect(colors.size).toBeGreaterThan(2);
  });

  it("lists the missing cells of an incomplete grid", () => {
    const csv = join(tmp, "incomplete.csv");
    writeFileSync(csv, "phi_m,phi_w,score\n0,0,1\n0,0.5,2\n0.5,0,3\n");
    expect(() =>
      plotHeatmap({ csvPath: csv, valueColumn: "score", outPath: join(tmp, "x.png") }),
    ).toThrow(/missing cells: \(0\.5, 0\.5\)/);
  });

  it("rejects CSVs without dispersion columns filled", () => {
    const csv = join(tmp, "nophi.csv");
    writeFileSync(csv, "phi_m,phi_w,score\n,,1\n");
    expect(() =>
      plotHeatmap({ csvPath: csv, valueColumn: "score", outPath: join(tmp, "y.png") }),
    ).toThrow(/no dispersion values/);
  });

  it("cli round trip", () => {
    const out = join(tmp, "cli_grid.png");
    expect(
      heatmapMain([
        "--csv",
        join(TESTDATA, "welfare_grid.csv"),
        "--value",
        "net_welfare",
        "--out",
        out,
        "--title",
        "net welfare",
      ]),
    ).toBe(0);
    decode(out);
  });
});
