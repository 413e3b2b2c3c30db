// Wire types mirroring the explorer API's JSON bodies.

export type Cell = [number, number];

export interface ScenarioDocument {
  format_version: number;
  grid: { width: number; height: number; invalid_cells: Cell[] };
  agents: { id: number; x: number; y: number }[];
  actions: Record<string, string>;
  mdr: Record<string, string>;
}

export interface CollisionEvent {
  participants: number[];
  sub_step: number;
  kind: "vertex" | "swap" | "boundary";
}

export interface FeasibilityEntry {
  count: number;
  feasible: string[];
}

export interface AggregateStats {
  offdiag_sum_squares: number;
  positive_count: number;
  negative_count: number;
  zero_count: number;
  min_entry: [number, number, number] | null;
  max_entry: [number, number, number] | null;
}

export interface ResultDocument {
  agent_ids: number[];
  fear: number[][];
  fear_display: number[][];
  feasibility: {
    actual: Record<string, FeasibilityEntry>;
    actor_mdr: Record<string, Record<string, FeasibilityEntry>>;
    others_mdr: Record<string, FeasibilityEntry>;
  };
  collisions: CollisionEvent[];
  aggregate: AggregateStats;
}

export interface WhatIfEntry {
  action: string;
  fear_row: Record<string, number>;
  fear_row_display: Record<string, number>;
  feasible: boolean;
  collisions: CollisionEvent[];
}

export interface WhatIfResponse {
  agent: number;
  entries: WhatIfEntry[];
}

// The 17-action catalog in canonical order (also served by GET /catalog).
export const ACTION_CATALOG: readonly string[] = [
  "S0",
  "R1", "R2", "R3", "R4",
  "L1", "L2", "L3", "L4",
  "U1", "U2", "U3", "U4",
  "D1", "D2", "D3", "D4",
];
