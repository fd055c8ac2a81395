// DOM wiring: scenario picker, grid, schedule form, plan panel, replay.

import { ApiClient } from "./api.js";
import { buildGrid, oreBadge } from "./grid.js";
import { agentPath, buildPlanRows, collectedAfter } from "./planView.js";
import { submitSchedule } from "./form.js";
import { PlanPayload, ScenarioInfo, ScheduleForm } from "./types.js";
import { MODE_NAMES } from "./validation.js";

const REPLAY_TICK_MS = 600;

export class App {
  private scenarios: ScenarioInfo[] = [];
  private current: ScenarioInfo | null = null;
  private plan: PlanPayload | null = null;
  private replayTimer: number | null = null;
  private replayStep = 0;

  constructor(private api: ApiClient, private root: Document) {}

  async start(): Promise<void> {
    try {
      this.scenarios = await this.api.listScenarios();
    } catch (error) {
      this.showBanner(`Cannot reach the planning service: ${error}`);
      this.setControlsEnabled(false);
      return;
    }
    const picker = this.el<HTMLSelectElement>("scenario");
    picker.innerHTML = "";
    for (const scenario of this.scenarios) {
      const option = this.root.createElement("option");
      option.value = scenario.id;
      option.textContent = `${scenario.id} — ${scenario.name}`;
      picker.appendChild(option);
    }
    picker.addEventListener("change", () => this.selectScenario(picker.value));
    for (const id of ["initial-mode", "change1-mode", "change2-mode"]) {
      this.fillModeSelect(this.el<HTMLSelectElement>(id), id !== "initial-mode");
    }
    this.el<HTMLButtonElement>("solve").addEventListener("click", () => {
      void this.solve();
    });
    this.el<HTMLButtonElement>("replay").addEventListener("click", () => {
      this.toggleReplay();
    });
    this.el<HTMLButtonElement>("dialog-close").addEventListener("click", () => {
      this.el<HTMLDialogElement>("error-dialog").close();
    });
    this.selectScenario(this.scenarios[0].id);
  }

  private fillModeSelect(select: HTMLSelectElement, withBlank: boolean): void {
    select.innerHTML = "";
    if (withBlank) {
      const blank = this.root.createElement("option");
      blank.value = "";
      blank.textContent = "—";
      select.appendChild(blank);
    }
    for (const mode of MODE_NAMES) {
      const option = this.root.createElement("option");
      option.value = mode;
      option.textContent = mode;
      select.appendChild(option);
    }
  }

  private selectScenario(id: string): void {
    this.current = this.scenarios.find(s => s.id === id) ?? null;
    this.stopReplay();
    this.plan = null;
    this.el("plan-panel").innerHTML = "";
    this.el("metrics").textContent = "";
    this.el<HTMLButtonElement>("replay").disabled = true;
    if (this.current) {
      this.el("horizon").textContent = String(this.current.horizon);
      this.renderGrid(this.current.display?.agent ?? null, []);
    }
  }

  private readForm(): ScheduleForm {
    const changes = [];
    for (const row of ["change1", "change2"]) {
      const stepText = this.el<HTMLInputElement>(`${row}-step`).value.trim();
      const mode = this.el<HTMLSelectElement>(`${row}-mode`).value;
      changes.push({
        step: stepText === "" ? null : Number(stepText),
        mode: mode === "" ? null : mode,
      });
    }
    return {
      initialMode: this.el<HTMLSelectElement>("initial-mode").value,
      changes,
    };
  }

  private async solve(): Promise<void> {
    if (!this.current) {
      return;
    }
    this.stopReplay();
    const button = this.el<HTMLButtonElement>("solve");
    button.disabled = true;
    try {
      const outcome = await submitSchedule(this.api, this.current, this.readForm());
      if (outcome.kind === "plan") {
        this.plan = outcome.response.plan;
        this.renderPlan(outcome.response.solve_time_ms,
                        outcome.response.metrics);
      } else {
        this.showErrorDialog(outcome.errors.map(e => e.message));
      }
    } catch (error) {
      this.showErrorDialog([`request failed: ${error}`]);
    } finally {
      button.disabled = false;
    }
  }

  private renderPlan(solveTimeMs: number, metrics: Record<string, number>[]): void {
    const panel = this.el("plan-panel");
    panel.innerHTML = "";
    if (!this.plan) {
      return;
    }
    for (const row of buildPlanRows(this.plan)) {
      const div = this.root.createElement("div");
      if (row.kind === "separator") {
        div.className = "plan-separator";
        div.textContent = row.label;
      } else if (row.kind === "step") {
        div.className = `plan-step mode-${row.mode}`;
        const badge = row.obligationCompliant ? "" : " ⚠ breaks obligation";
        div.textContent =
          `${row.index}. ${row.text} · ${row.authorization}${badge}`;
      } else {
        div.className = "plan-step plan-wait-tail";
        div.textContent =
          `${row.fromStep}. waits until horizon (${row.count} steps)`;
      }
      panel.appendChild(div);
    }
    const last = metrics[metrics.length - 1] ?? {};
    this.el("metrics").textContent =
      `subgoals ${last["subgoal_count"] ?? "?"} · ` +
      `waits ${last["wait_count"] ?? "?"} · solved in ${solveTimeMs} ms`;
    this.el<HTMLButtonElement>("replay").disabled = false;
    this.replayStep = 0;
  }

  private renderGrid(agentAt: string | null, collected: string[]): void {
    const display = this.current?.display;
    const host = this.el("grid");
    host.innerHTML = "";
    if (!display) {
      host.textContent = "No grid metadata for this scenario.";
      return;
    }
    const model = buildGrid(display, agentAt, collected);
    host.style.gridTemplateColumns = `repeat(${model.cols}, 64px)`;
    for (const cell of model.cells) {
      const div = this.root.createElement("div");
      div.className = `cell risk-${cell.risk}`;
      div.title = `${cell.id}: ${cell.risk} risk`;
      const label = this.root.createElement("span");
      label.className = "cell-id";
      label.textContent = cell.id;
      div.appendChild(label);
      for (const ore of cell.ores) {
        const badge = this.root.createElement("span");
        badge.className = `ore ore-${ore}`;
        badge.textContent = oreBadge(ore);
        div.appendChild(badge);
      }
      if (cell.hasAgent) {
        const agent = this.root.createElement("span");
        agent.className = "agent";
        agent.textContent = "⛏";
        div.appendChild(agent);
      }
      host.appendChild(div);
    }
  }

  private toggleReplay(): void {
    if (this.replayTimer !== null) {
      this.stopReplay();
      return;
    }
    if (!this.plan || !this.current?.display) {
      return;
    }
    const path = agentPath(this.plan, this.current.display.agent);
    const held = collectedAfter(this.plan);
    this.el<HTMLButtonElement>("replay").textContent = "Stop";
    const tick = () => {
      this.renderGrid(path[this.replayStep], held[this.replayStep]);
      this.el("replay-status").textContent =
        this.replayStep === 0 ? "start"
          : `after step ${this.replayStep - 1}`;
      this.replayStep += 1;
      if (this.replayStep >= path.length) {
        this.stopReplay();
      }
    };
    tick();
    this.replayTimer = window.setInterval(tick, REPLAY_TICK_MS);
  }

  private stopReplay(): void {
    if (this.replayTimer !== null) {
      window.clearInterval(this.replayTimer);
      this.replayTimer = null;
    }
    this.replayStep = 0;
    const replay = this.el<HTMLButtonElement>("replay");
    replay.textContent = "Replay";
    this.el("replay-status").textContent = "";
  }

  private showErrorDialog(messages: string[]): void {
    const list = this.el("dialog-messages");
    list.innerHTML = "";
    for (const message of messages) {
      const item = this.root.createElement("li");
      item.textContent = message;
      list.appendChild(item);
    }
    this.el<HTMLDialogElement>("error-dialog").showModal();
  }

  private showBanner(text: string): void {
    const banner = this.el("banner");
    banner.textContent = text;
    banner.classList.remove("hidden");
  }

  private setControlsEnabled(enabled: boolean): void {
    for (const id of ["scenario", "initial-mode", "change1-step", "change1-mode",
                      "change2-step", "change2-mode", "solve", "replay"]) {
      (this.el(id) as HTMLButtonElement).disabled = !enabled;
    }
  }

  private el<T extends HTMLElement = HTMLElement>(id: string): T {
    const node = this.root.getElementById(id);
    if (!node) {
      throw new Error(`missing element #${id}`);
    }
    return node as T;
  }
}
