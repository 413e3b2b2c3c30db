import { describe, expect, it } from "vitest";

import { formatDisplay, heatmapCells, renderHeatmap, type DrawSurface } from "../src/heatmap.js";
import { evaluateCase1a, evaluateCase1b, evaluateCase1c } from "./fixtures.js";

const CASES = {
  case1a: evaluateCase1a,
  case1b: evaluateCase1b,
  case1c: evaluateCase1c,
};

describe("display parity with the API", () => {
  // every heatmap cell text equals the API's display copy, never re-rounded
  for (const [name, result] of Object.entries(CASES)) {
    it(`${name}: cell text comes verbatim from fear_display`, () => {
      const cells = heatmapCells(result);
      expect(cells).toHaveLength(result.agent_ids.length ** 2);
      for (const cell of cells) {
        const display = result.fear_display[cell.row]![cell.col]!;
        expect(cell.text).toBe(display.toFixed(2));
        expect(Number(cell.text)).toBeCloseTo(display, 10);
      }
    });
  }

  it("case1a shows the paper's rounded courteous pair", () => {
    const texts = heatmapCells(evaluateCase1a).map((c) => c.text);
    expect(texts).toEqual(["1.00", "-0.17", "-0.25", "1.00"]);
  });

  it("full-precision values are not what is rendered", () => {
    // -1/6 renders as -0.17, not -0.1666...
    const cell = heatmapCells(evaluateCase1a).find((c) => c.actor === 1 && c.affected === 2)!;
    expect(cell.text).toBe("-0.17");
    expect(cell.value).not.toBe(Number(cell.text));
  });
});

describe("cell styling", () => {
  it("mixed instance colors red for assertive, blue for courteous", () => {
    const cells = heatmapCells(evaluateCase1b);
    const assertive = cells.find((c) => c.actor === 1 && c.affected === 2)!;
    const courteous = cells.find((c) => c.actor === 2 && c.affected === 1)!;
    const [ar, , ab] = rgb(assertive.fill);
    const [cr, , cb] = rgb(courteous.fill);
    expect(ar).toBeGreaterThan(ab); // red-dominant
    expect(cb).toBeGreaterThan(cr); // blue-dominant
  });

  it("both off-diagonals are red-tinted when both agents are assertive", () => {
    const cells = heatmapCells(evaluateCase1c).filter((c) => !c.diagonal);
    for (const cell of cells) {
      const [r, , b] = rgb(cell.fill);
      expect(r).toBeGreaterThan(b);
    }
  });

  it("diagonal cells are flagged for the distinct outline", () => {
    const cells = heatmapCells(evaluateCase1a);
    expect(cells.filter((c) => c.diagonal).map((c) => [c.row, c.col])).toEqual([
      [0, 0],
      [1, 1],
    ]);
  });
});

describe("renderHeatmap drawing", () => {
  it("paints every cell, outlines the diagonal, writes every display text", () => {
    const calls: { op: string; args: unknown[] }[] = [];
    const surface: DrawSurface = {
      fillStyle: "",
      strokeStyle: "",
      lineWidth: 0,
      font: "",
      textAlign: "left",
      textBaseline: "alphabetic",
      fillRect: (...args) => calls.push({ op: "fillRect", args }),
      strokeRect: (...args) => calls.push({ op: "strokeRect", args }),
      fillText: (...args) => calls.push({ op: "fillText", args }),
      clearRect: (...args) => calls.push({ op: "clearRect", args }),
    };
    renderHeatmap(surface, evaluateCase1b);
    expect(calls.filter((c) => c.op === "fillRect")).toHaveLength(4);
    expect(calls.filter((c) => c.op === "strokeRect")).toHaveLength(2);
    const texts = calls.filter((c) => c.op === "fillText").map((c) => String(c.args[0]));
    for (const row of evaluateCase1b.fear_display) {
      for (const value of row) {
        expect(texts).toContain(value.toFixed(2));
      }
    }
  });
});

describe("formatDisplay", () => {
  it("pads but never re-rounds", () => {
    expect(formatDisplay(1)).toBe("1.00");
    expect(formatDisplay(-0.17)).toBe("-0.17");
    expect(formatDisplay(0.83)).toBe("0.83");
  });
});

function rgb(fill: string): [number, number, number] {
  const match = /rgb\((\d+), (\d+), (\d+)\)/.exec(fill);
  if (!match) throw new Error(`not an rgb() fill: ${fill}`);
  return [Number(match[1]), Number(match[2]), Number(match[3])];
}
