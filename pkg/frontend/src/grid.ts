// Grid view model: the scenario's display metadata laid out for rendering.

import { GridDisplay } from "./types.js";

export interface CellSpec {
  id: string;
  row: number;
  col: number;
  color: string;
  risk: string;
  ores: string[];
  hasAgent: boolean;
}

export interface GridViewModel {
  rows: number;
  cols: number;
  cells: CellSpec[];
}

const ORE_BADGES: Record<string, string> = {
  gold: "Au", silver: "Ag", iron: "Fe",
};

export function oreBadge(ore: string): string {
  return ORE_BADGES[ore] ?? ore.slice(0, 2);
}

export function buildGrid(display: GridDisplay,
                          agentAt: string | null = display.agent,
                          collected: string[] = []): GridViewModel {
  const oresByCell = new Map<string, string[]>();
  for (const [ore, loc] of Object.entries(display.ores)) {
    if (collected.includes(ore)) {
      continue;
    }
    oresByCell.set(loc, [...(oresByCell.get(loc) ?? []), ore].sort());
  }
  const cells = display.cells.map(cell => ({
    id: cell.id,
    row: cell.row,
    col: cell.col,
    color: cell.color,
    risk: cell.risk,
    ores: oresByCell.get(cell.id) ?? [],
    hasAgent: cell.id === agentAt,
  }));
  return { rows: display.rows, cols: display.cols, cells };
}
