// Grid view model from the scenario display metadata.

import { describe, expect, it } from "vitest";

import { buildGrid, oreBadge } from "../src/grid.js";
import { ScenarioInfo } from "../src/types.js";
import scenariosFixture from "./fixtures/scenarios.json";

const scenarios = scenariosFixture as ScenarioInfo[];
const s1 = scenarios.find(s => s.id === "s1")!;

describe("buildGrid on s1", () => {
  const model = buildGrid(s1.display!);

  it("lays out a 3x3 grid", () => {
    expect(model.rows).toBe(3);
    expect(model.cols).toBe(3);
    expect(model.cells).toHaveLength(9);
  });

  it("colors risk levels", () => {
    const byId = new Map(model.cells.map(c => [c.id, c]));
    expect(byId.get("l4")!.color).toBe("red");
    expect(byId.get("l3")!.color).toBe("yellow");
    expect(byId.get("l0")!.color).toBe("green");
  });

  it("places exactly one agent marker", () => {
    const withAgent = model.cells.filter(c => c.hasAgent);
    expect(withAgent.map(c => c.id)).toEqual(["l4"]);
  });

  it("places ore markers matching the scenario", () => {
    const ores = new Map(model.cells.filter(c => c.ores.length)
                                    .map(c => [c.id, c.ores]));
    expect(ores).toEqual(new Map([
      ["l0", ["gold"]], ["l1", ["iron"]], ["l7", ["silver"]],
    ]));
  });
});

describe("replay overrides", () => {
  it("moves the agent and removes collected ores", () => {
    const model = buildGrid(s1.display!, "l0", ["gold"]);
    expect(model.cells.find(c => c.hasAgent)!.id).toBe("l0");
    expect(model.cells.find(c => c.id === "l0")!.ores).toEqual([]);
    expect(model.cells.find(c => c.id === "l7")!.ores).toEqual(["silver"]);
  });
});

describe("ore badges", () => {
  it("uses element symbols for the known ores", () => {
    expect(oreBadge("gold")).toBe("Au");
    expect(oreBadge("silver")).toBe("Ag");
    expect(oreBadge("iron")).toBe("Fe");
    expect(oreBadge("topaz")).toBe("to");
  });
});
