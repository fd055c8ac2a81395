// The solve flow: validate locally, only then talk to the service.

import { ApiClient } from "./api.js";
import { ApiError, ScenarioInfo, ScheduleForm, SolveResponse } from "./types.js";
import { activeChanges, validateSchedule } from "./validation.js";

export type SubmitOutcome =
  | { kind: "validation"; errors: ApiError[] }
  | { kind: "server-error"; errors: ApiError[] }
  | { kind: "plan"; response: SolveResponse };

export async function submitSchedule(api: ApiClient, scenario: ScenarioInfo,
                                     form: ScheduleForm): Promise<SubmitOutcome> {
  const schedule = activeChanges(form);
  const issues = validateSchedule(schedule, scenario.horizon);
  if (issues.length > 0) {
    // Never sends a request the server would reject for these reasons.
    return { kind: "validation", errors: issues };
  }
  const response = await api.solve({
    scenario_id: scenario.id,
    initial_mode: schedule.initialMode,
    changes: schedule.changes.map(c => ({ step: c.step, mode: c.mode })),
  });
  if (response.errors.length > 0 || response.plan === null) {
    return { kind: "server-error", errors: response.errors };
  }
  return { kind: "plan", response };
}
