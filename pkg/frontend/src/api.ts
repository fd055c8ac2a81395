// Thin fetch client for the planning service.

import { ScenarioInfo, SolveRequestBody, SolveResponse } from "./types.js";

export interface ApiClient {
  listScenarios(): Promise<ScenarioInfo[]>;
  solve(body: SolveRequestBody): Promise<SolveResponse>;
}

export function createApi(baseUrl = ""): ApiClient {
  return {
    async listScenarios(): Promise<ScenarioInfo[]> {
      const response = await fetch(`${baseUrl}/api/scenarios`);
      if (!response.ok) {
        throw new Error(`scenario catalog failed: HTTP ${response.status}`);
      }
      return response.json();
    },

    async solve(body: SolveRequestBody): Promise<SolveResponse> {
      const response = await fetch(`${baseUrl}/api/solve`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      });
      // Error statuses still carry the structured payload.
      return response.json();
    },
  };
}
