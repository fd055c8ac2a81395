// Payload types mirroring the planning service's JSON API.

export interface GridCell {
  id: string;
  row: number;
  col: number;
  risk: string;
  color: string;
}

export interface GridDisplay {
  rows: number;
  cols: number;
  cells: GridCell[];
  agent: string | null;
  ores: Record<string, string>;
}

export interface ScenarioInfo {
  id: string;
  name: string;
  horizon: number;
  display: GridDisplay | null;
}

export interface PlanStep {
  index: number;
  action: string;
  mode: string;
  authorization: string;
  obligation_compliant: boolean;
}

export interface PlanSegment {
  mode: string;
  from_step: number;
  to_step: number;
}

export type MetricMap = Record<string, number>;

export interface PlanPayload {
  steps: PlanStep[];
  segments: PlanSegment[];
  metrics: MetricMap[];
}

export interface ApiError {
  code: string;
  message: string;
}

export interface SolveResponse {
  plan: PlanPayload | null;
  metrics: MetricMap[];
  solve_time_ms: number;
  errors: ApiError[];
}

export interface ChangeRow {
  step: number | null;
  mode: string | null;
}

export interface ScheduleForm {
  initialMode: string;
  changes: ChangeRow[];
}

export interface SolveRequestBody {
  scenario_id: string;
  initial_mode: string;
  changes: { step: number | null; mode: string | null }[];
}
