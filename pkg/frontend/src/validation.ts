// Client-side schedule validation.
//
// Mirrors the server's checks code for code so nothing valid is blocked and
// nothing invalid round-trips just to fail; parity is pinned by
// test/fixtures/validation_cases.json, generated from the service.

import { ApiError, ScheduleForm } from "./types.js";

export const MODE_NAMES = ["safe", "normal", "risky"] as const;
export const MAX_CHANGES = 2;

export function validateSchedule(form: ScheduleForm, horizon: number,
                                 modes: readonly string[] = MODE_NAMES): ApiError[] {
  const issues: ApiError[] = [];
  if (!modes.includes(form.initialMode)) {
    issues.push({
      code: "unknown_mode",
      message: `unknown behavior mode '${form.initialMode}'`,
    });
  }
  if (form.changes.length > MAX_CHANGES) {
    issues.push({
      code: "too_many_changes",
      message: `at most ${MAX_CHANGES} behavior mode changes are supported`,
    });
  }
  let previousStep: number | null = null;
  form.changes.forEach((change, i) => {
    if (change.step === null || change.mode === null) {
      issues.push({
        code: "mode_and_step_required",
        message: `change ${i + 1}: behavior mode and time step both required`,
      });
      return;
    }
    if (!modes.includes(change.mode)) {
      issues.push({
        code: "unknown_mode",
        message: `change ${i + 1}: unknown behavior mode '${change.mode}'`,
      });
    }
    if (!(change.step >= 1 && change.step <= horizon - 1)) {
      issues.push({
        code: "step_out_of_range",
        message: `change ${i + 1}: step must lie in [1, ${horizon - 1}]`,
      });
    }
    if (previousStep !== null && change.step <= previousStep) {
      issues.push({
        code: "steps_not_increasing",
        message: "change steps must be strictly increasing",
      });
    }
    previousStep = change.step;
  });
  return issues;
}

// Change rows that are completely empty are treated as absent; a row with
// only one of (step, mode) filled is a validation error the user must see.
export function activeChanges(form: ScheduleForm): ScheduleForm {
  return {
    initialMode: form.initialMode,
    changes: form.changes.filter(c => c.step !== null || c.mode !== null),
  };
}
