// Plan panel view model against captured service responses.

import { describe, expect, it } from "vitest";

import { agentPath, buildPlanRows, collectedAfter,
         describeAction } from "../src/planView.js";
import { PlanPayload, SolveResponse } from "../src/types.js";
import table1Fixture from "./fixtures/solve_table1.json";
import s9Fixture from "./fixtures/solve_s9_slow.json";
import riskyFixture from "./fixtures/solve_s1_risky.json";

const table1 = (table1Fixture as SolveResponse).plan as PlanPayload;
const s9 = (s9Fixture as SolveResponse).plan as PlanPayload;
const risky = (riskyFixture as SolveResponse).plan as PlanPayload;

describe("describeAction", () => {
  it("renders the three mining actions", () => {
    expect(describeAction("move(l4, l1)")).toBe("Move from l4 to l1");
    expect(describeAction("collect(gold)")).toBe("Collect gold");
    expect(describeAction("wait")).toBe("Wait");
  });
});

describe("plan rows for the two-change schedule", () => {
  const rows = buildPlanRows(table1);

  it("renders three mode segments with separators", () => {
    const separators = rows.filter(r => r.kind === "separator");
    expect(separators.map(s => s.label)).toEqual([
      "*** Begin in Safe Mode ***",
      "*** Change to Normal Mode ***",
      "*** Change to Risky Mode ***",
    ]);
  });

  it("collapses the trailing waits into one row", () => {
    const tail = rows.filter(r => r.kind === "wait-tail");
    expect(tail).toHaveLength(1);
    expect(tail[0]).toMatchObject({ fromStep: 10, count: 4, mode: "risky" });
    const stepRows = rows.filter(r => r.kind === "step");
    expect(stepRows).toHaveLength(10);
    expect(stepRows.every(r => !(r as { isWait: boolean }).isWait)).toBe(true);
  });

  it("keeps step count = non-wait actions + rendered tail", () => {
    const nonWait = table1.steps.filter(s => s.action !== "wait").length;
    const stepRows = rows.filter(r => r.kind === "step").length;
    expect(stepRows).toBe(nonWait);
    expect(stepRows + 4).toBe(table1.steps.length);
  });

  it("keeps the late iron collection compliant (silver already held)", () => {
    const iron = rows.find(
      r => r.kind === "step" && r.text === "Collect iron");
    expect(iron).toMatchObject({ mode: "risky", obligationCompliant: true });
  });
});

describe("plan rows for the pure risky solve", () => {
  it("flags the out-of-order silver collection", () => {
    const rows = buildPlanRows(risky);
    const silver = rows.find(
      r => r.kind === "step" && r.text === "Collect silver");
    expect(silver).toMatchObject({ index: 1, obligationCompliant: false });
  });
});

describe("plan rows with mid-plan waits", () => {
  it("renders non-tail waits as ordinary steps", () => {
    const rows = buildPlanRows(s9);
    const waitRows = rows.filter(r => r.kind === "step" && r.isWait);
    expect(waitRows.map(r => (r as { index: number }).index)).toEqual([2, 5]);
    expect(rows.filter(r => r.kind === "wait-tail")).toHaveLength(0);
  });
});

describe("replay path", () => {
  it("tracks the agent across moves", () => {
    const path = agentPath(table1, "l4");
    expect(path[0]).toBe("l4");
    expect(path[1]).toBe("l1");
    expect(path[3]).toBe("l0");  // after move, move, collect
    expect(path[path.length - 1]).toBe("l1");
  });

  it("tracks collected ores", () => {
    const held = collectedAfter(table1);
    expect(held[0]).toEqual([]);
    expect(held[3]).toEqual(["gold"]);
    expect(held[held.length - 1]).toEqual(["gold", "silver", "iron"]);
  });
});
