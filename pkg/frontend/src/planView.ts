// Pure view model for the annotated plan panel.
//
// The server's plan is turned into display rows: a separator at each mode
// segment, one row per step, and the trailing wait run collapsed into a
// single "waits until horizon" row (mid-plan waits stay individual rows,
// they carry information).

import { PlanPayload, PlanStep } from "./types.js";

export type PlanRow =
  | { kind: "separator"; label: string; mode: string }
  | { kind: "step"; index: number; text: string; mode: string;
      authorization: string; obligationCompliant: boolean; isWait: boolean }
  | { kind: "wait-tail"; fromStep: number; count: number; mode: string };

export function describeAction(action: string): string {
  const match = /^(\w+)\((.*)\)$/.exec(action);
  if (!match) {
    return action === "wait" ? "Wait" : action;
  }
  const [, name, argText] = match;
  const args = argText.split(",").map(a => a.trim());
  if (name === "move" && args.length === 2) {
    return `Move from ${args[0]} to ${args[1]}`;
  }
  if (name === "collect" && args.length === 1) {
    return `Collect ${args[0]}`;
  }
  return action;
}

function separatorLabel(mode: string, first: boolean): string {
  const title = mode.charAt(0).toUpperCase() + mode.slice(1);
  return `*** ${first ? "Begin in" : "Change to"} ${title} Mode ***`;
}

function waitTailStart(steps: PlanStep[]): number {
  let cutoff = steps.length;
  while (cutoff > 0 && steps[cutoff - 1].action === "wait") {
    cutoff -= 1;
  }
  return cutoff;
}

export function buildPlanRows(plan: PlanPayload): PlanRow[] {
  const rows: PlanRow[] = [];
  const tailStart = waitTailStart(plan.steps);
  for (const [i, segment] of plan.segments.entries()) {
    rows.push({ kind: "separator", mode: segment.mode,
                label: separatorLabel(segment.mode, i === 0) });
    for (const step of plan.steps.slice(segment.from_step, segment.to_step)) {
      if (step.index >= tailStart) {
        break;
      }
      rows.push({
        kind: "step",
        index: step.index,
        text: describeAction(step.action),
        mode: step.mode,
        authorization: step.authorization,
        obligationCompliant: step.obligation_compliant,
        isWait: step.action === "wait",
      });
    }
  }
  const tail = plan.steps.length - tailStart;
  if (tail > 0) {
    rows.push({ kind: "wait-tail", fromStep: tailStart, count: tail,
                mode: plan.steps[tailStart].mode });
  }
  return rows;
}

// Locations of the agent before each step and after the last one, for the
// replay animation; moves are the only actions that change it.
export function agentPath(plan: PlanPayload, start: string | null): (string | null)[] {
  const path: (string | null)[] = [start];
  let here = start;
  for (const step of plan.steps) {
    const match = /^move\((.*)\)$/.exec(step.action);
    if (match) {
      here = match[1].split(",").map(a => a.trim())[1];
    }
    path.push(here);
  }
  return path;
}

// Ores held after each prefix of the plan, for marker updates during replay.
export function collectedAfter(plan: PlanPayload): string[][] {
  const held: string[][] = [[]];
  let current: string[] = [];
  for (const step of plan.steps) {
    const match = /^collect\((.*)\)$/.exec(step.action);
    if (match) {
      current = [...current, match[1].trim()];
    }
    held.push(current);
  }
  return held;
}
