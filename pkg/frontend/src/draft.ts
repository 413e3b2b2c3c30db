// Editable scenario state behind the grid editor. Every mutation either
// applies or returns the exact reason it was rejected; serialization refuses
// to emit a document that the core would bounce.

import { ACTION_CATALOG, type ScenarioDocument } from "./types.js";

export interface DraftAgent {
  id: number;
  x: number;
  y: number;
}

export interface DraftIssue {
  field: string;
  message: string;
}

const key = (x: number, y: number) => `${x},${y}`;

export class ScenarioDraft {
  width: number;
  height: number;
  private invalid: Set<string>;
  agents: DraftAgent[] = [];
  actions = new Map<number, string>();
  mdr = new Map<number, string>();
  activeAgent: number | null = null;
  hoveredAction: string | null = null;

  constructor(width = 10, height = 1) {
    this.width = width;
    this.height = height;
    this.invalid = new Set();
  }

  static fromDocument(doc: ScenarioDocument): ScenarioDraft {
    const draft = new ScenarioDraft(doc.grid.width, doc.grid.height);
    for (const [x, y] of doc.grid.invalid_cells) draft.invalid.add(key(x, y));
    draft.agents = doc.agents
      .map((a) => ({ ...a }))
      .sort((a, b) => a.id - b.id);
    for (const agent of draft.agents) {
      draft.actions.set(agent.id, doc.actions[String(agent.id)] ?? "S0");
      draft.mdr.set(agent.id, doc.mdr[String(agent.id)] ?? "S0");
    }
    return draft;
  }

  inBounds(x: number, y: number): boolean {
    return x >= 0 && x < this.width && y >= 0 && y < this.height;
  }

  isValidCell(x: number, y: number): boolean {
    return this.inBounds(x, y) && !this.invalid.has(key(x, y));
  }

  agentAt(x: number, y: number): DraftAgent | undefined {
    return this.agents.find((a) => a.x === x && a.y === y);
  }

  invalidCells(): [number, number][] {
    return [...this.invalid]
      .map((k) => k.split(",").map(Number) as [number, number])
      .sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  }

  toggleCell(x: number, y: number): string | null {
    if (!this.inBounds(x, y)) return `cell (${x}, ${y}) is outside the grid`;
    const k = key(x, y);
    if (this.invalid.has(k)) {
      this.invalid.delete(k);
      return null;
    }
    const occupant = this.agentAt(x, y);
    if (occupant) return `cannot block (${x}, ${y}): agent ${occupant.id} stands there`;
    if (this.invalid.size + 1 >= this.width * this.height)
      return "cannot block the last valid cell";
    this.invalid.add(k);
    return null;
  }

  placeAgent(x: number, y: number): string | null {
    if (!this.inBounds(x, y)) return `cell (${x}, ${y}) is outside the grid`;
    if (!this.isValidCell(x, y)) return `cell (${x}, ${y}) is not a valid cell`;
    const occupant = this.agentAt(x, y);
    if (occupant) return `agent ${occupant.id} already occupies (${x}, ${y})`;
    const id = this.agents.length + 1;
    this.agents.push({ id, x, y });
    this.actions.set(id, "S0");
    this.mdr.set(id, "S0");
    this.activeAgent = id;
    return null;
  }

  moveAgent(id: number, x: number, y: number): string | null {
    const agent = this.agents.find((a) => a.id === id);
    if (!agent) return `no agent with id ${id}`;
    if (!this.isValidCell(x, y)) return `cell (${x}, ${y}) is not a valid cell`;
    const occupant = this.agentAt(x, y);
    if (occupant && occupant.id !== id)
      return `agent ${occupant.id} already occupies (${x}, ${y})`;
    agent.x = x;
    agent.y = y;
    return null;
  }

  deleteAgent(id: number): string | null {
    const index = this.agents.findIndex((a) => a.id === id);
    if (index < 0) return `no agent with id ${id}`;
    this.agents.splice(index, 1);
    const actions = new Map<number, string>();
    const mdr = new Map<number, string>();
    // ids stay densely numbered 1..k; per-agent choices follow the agent
    this.agents.forEach((agent, i) => {
      const renumbered = i + 1;
      actions.set(renumbered, this.actions.get(agent.id) ?? "S0");
      mdr.set(renumbered, this.mdr.get(agent.id) ?? "S0");
      agent.id = renumbered;
    });
    this.actions = actions;
    this.mdr = mdr;
    if (this.activeAgent === id) this.activeAgent = null;
    else if (this.activeAgent !== null && this.activeAgent > id) this.activeAgent -= 1;
    return null;
  }

  setAction(id: number, code: string): string | null {
    if (!this.agents.some((a) => a.id === id)) return `no agent with id ${id}`;
    if (!ACTION_CATALOG.includes(code)) return `unknown action code ${code}`;
    this.actions.set(id, code);
    return null;
  }

  setMdr(id: number, code: string): string | null {
    if (!this.agents.some((a) => a.id === id)) return `no agent with id ${id}`;
    if (!ACTION_CATALOG.includes(code)) return `unknown action code ${code}`;
    this.mdr.set(id, code);
    return null;
  }

  validate(): DraftIssue[] {
    const issues: DraftIssue[] = [];
    if (this.agents.length === 0)
      issues.push({ field: "agents", message: "place at least one agent" });
    const seen = new Map<string, number>();
    for (const agent of this.agents) {
      if (!this.isValidCell(agent.x, agent.y))
        issues.push({
          field: `agent ${agent.id}`,
          message: `agent ${agent.id} stands on an invalid cell (${agent.x}, ${agent.y})`,
        });
      const k = key(agent.x, agent.y);
      const other = seen.get(k);
      if (other !== undefined)
        issues.push({
          field: `agent ${agent.id}`,
          message: `agents ${other} and ${agent.id} share cell (${agent.x}, ${agent.y})`,
        });
      seen.set(k, agent.id);
      for (const [label, table] of [
        ["action", this.actions],
        ["MdR", this.mdr],
      ] as const) {
        const code = table.get(agent.id);
        if (!code || !ACTION_CATALOG.includes(code))
          issues.push({
            field: `agent ${agent.id}`,
            message: `agent ${agent.id} has no valid ${label}`,
          });
      }
    }
    return issues;
  }

  toDocument(): ScenarioDocument {
    const issues = this.validate();
    if (issues.length > 0)
      throw new Error(`draft is not a valid scenario: ${issues[0]!.message}`);
    const actions: Record<string, string> = {};
    const mdr: Record<string, string> = {};
    for (const agent of this.agents) {
      actions[String(agent.id)] = this.actions.get(agent.id)!;
      mdr[String(agent.id)] = this.mdr.get(agent.id)!;
    }
    return {
      format_version: 1,
      grid: {
        width: this.width,
        height: this.height,
        invalid_cells: this.invalidCells(),
      },
      agents: this.agents.map(({ id, x, y }) => ({ id, x, y })),
      actions,
      mdr,
    };
  }
}
