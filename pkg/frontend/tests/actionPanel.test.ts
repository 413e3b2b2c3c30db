import { describe, expect, it } from "vitest";

import { actionStrip } from "../src/actionPanel.js";
import { ACTION_CATALOG } from "../src/types.js";
import { evaluateCase1b, whatIfCase1bAgent1 } from "./fixtures.js";

describe("action strip", () => {
  it("lists all 17 actions in catalog order", () => {
    const strip = actionStrip(1, "R1", evaluateCase1b, null, null);
    expect(strip.map((e) => e.code)).toEqual([...ACTION_CATALOG]);
  });

  it("highlights exactly the feasible actions from the evaluation", () => {
    const strip = actionStrip(1, "R1", evaluateCase1b, null, null);
    const feasible = strip.filter((e) => e.feasible).map((e) => e.code);
    expect(feasible.sort()).toEqual(
      [...evaluateCase1b.feasibility.actual["1"]!.feasible].sort(),
    );
  });

  it("hover-preview of agent 1's L1 in case1b shows the -1/6 row before commit", () => {
    const strip = actionStrip(1, "R1", evaluateCase1b, whatIfCase1bAgent1, "L1");
    const l1 = strip.find((e) => e.code === "L1")!;
    expect(l1.selected).toBe(false); // previewed, not committed
    expect(l1.preview).not.toBeNull();
    expect(l1.preview![0]).toMatchObject({ affected: 2, text: "-0.17" });
    expect(l1.preview![0]!.value).toBeCloseTo(-1 / 6, 5);
    // the committed action still shows the evaluation's value
    const r1 = strip.find((e) => e.code === "R1")!;
    expect(r1.selected).toBe(true);
  });

  it("infeasible candidates still carry previews", () => {
    const strip = actionStrip(1, "R1", evaluateCase1b, whatIfCase1bAgent1, "L3");
    const l3 = strip.find((e) => e.code === "L3")!;
    expect(l3.feasible).toBe(false);
    expect(l3.previewFeasible).toBe(false);
    expect(l3.preview).not.toBeNull();
  });

  it("ignores what-if data for a different agent", () => {
    const strip = actionStrip(2, "R1", evaluateCase1b, whatIfCase1bAgent1, "L1");
    expect(strip.every((e) => e.preview === null)).toBe(true);
  });

  it("preview matches the plain evaluation for the current action", () => {
    const strip = actionStrip(1, "R1", evaluateCase1b, whatIfCase1bAgent1, "R1");
    const current = strip.find((e) => e.code === "R1")!;
    const row = evaluateCase1b.agent_ids.indexOf(1);
    const col = evaluateCase1b.agent_ids.indexOf(2);
    expect(current.preview![0]!.text).toBe(
      evaluateCase1b.fear_display[row]![col]!.toFixed(2),
    );
  });
});
