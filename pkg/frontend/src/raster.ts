/**
 * Tiny RGBA raster with just enough drawing primitives for the two chart
 * types, plus PNG output through pngjs.
 */

import { writeFileSync } from "fs";
import { PNG } from "pngjs";

import { GLYPH_H, GLYPH_W, glyphFor } from "./font.js";

export type Rgb = [number, number, number];

export const BLACK: Rgb = [20, 20, 20];
export const WHITE: Rgb = [255, 255, 255];
export const GREY: Rgb = [170, 170, 170];

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Rgb = WHITE) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, [r, g, b]: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    this.data[i] = r;
    this.data[i + 1] = g;
    this.data[i + 2] = b;
    this.data[i + 3] = 255;
  }

  fillRect(x: number, y: number, w: number, h: number, color: Rgb): void {
    for (let j = y; j < y + h; j++) {
      for (let i = x; i < x + w; i++) {
        this.set(i, j, color);
      }
    }
  }

  /** Bresenham segment. */
  line(x0: number, y0: number, x1: number, y1: number, color: Rgb): void {
    let [x, y] = [Math.round(x0), Math.round(y0)];
    const [ex, ey] = [Math.round(x1), Math.round(y1)];
    const dx = Math.abs(ex - x);
    const dy = -Math.abs(ey - y);
    const sx = x < ex ? 1 : -1;
    const sy = y < ey ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(x, y, color);
      if (x === ex && y === ey) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
    }
  }

  /** Thick line: the segment stamped over a (2r+1)^2 neighbourhood. */
  thickLine(x0: number, y0: number, x1: number, y1: number, color: Rgb, r = 1): void {
    for (let dy = -r; dy <= r; dy++) {
      for (let dx = -r; dx <= r; dx++) {
        this.line(x0 + dx, y0 + dy, x1 + dx, y1 + dy, color);
      }
    }
  }

  marker(x: number, y: number, color: Rgb, r = 2): void {
    this.fillRect(Math.round(x) - r, Math.round(y) - r, 2 * r + 1, 2 * r + 1, color);
  }

  text(x: number, y: number, s: string, color: Rgb = BLACK, scale = 1): void {
    let cx = Math.round(x);
    const cy = Math.round(y);
    for (const ch of s) {
      const rows = glyphFor(ch);
      for (let j = 0; j < GLYPH_H; j++) {
        for (let i = 0; i < GLYPH_W; i++) {
          if (rows[j][i] === "#") {
            this.fillRect(cx + i * scale, cy + j * scale, scale, scale, color);
          }
        }
      }
      cx += (GLYPH_W + 1) * scale;
    }
  }

  /** Text rotated 90 degrees counter-clockwise (for the y-axis label). */
  textVertical(x: number, y: number, s: string, color: Rgb = BLACK, scale = 1): void {
    let cy = Math.round(y);
    const cx = Math.round(x);
    for (const ch of s) {
      const rows = glyphFor(ch);
      for (let j = 0; j < GLYPH_H; j++) {
        for (let i = 0; i < GLYPH_W; i++) {
          if (rows[j][i] === "#") {
            this.fillRect(cx + j * scale, cy - i * scale, scale, scale, color);
          }
        }
      }
      cy -= (GLYPH_W + 1) * scale;
    }
  }

  writePng(path: string): void {
    const png = new PNG({ width: this.width, height: this.height });
    Buffer.from(this.data).copy(png.data);
    writeFileSync(path, PNG.sync.write(png));
  }
}

/** Short numeric label: trims trailing zeros, keeps magnitudes readable. */
export function formatTick(value: number): string {
  if (value === 0) return "0";
  if (Math.abs(value) >= 1000) return value.toFixed(0);
  const s = value.toPrecision(3);
  return s.includes(".") ? s.replace(/0+$/, "").replace(/\.$/, "") : s;
}

/** Round-ish tick positions covering [lo, hi]. */
export function ticks(lo: number, hi: number, count = 5): number[] {
  if (lo === hi) {
    return [lo];
  }
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 2.5 * step, 5 * step, 10 * step];
  const chosen = candidates.find((c) => span / c <= count) ?? 10 * step;
  const out: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + 1e-12; v += chosen) {
    out.push(Number(v.toFixed(10)));
  }
  return out;
}
