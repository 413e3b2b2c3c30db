// Application state: the scenario draft plus the evaluation lifecycle.
//
// Two invariants live here. First, the matrix on screen always corresponds
// to the draft it was computed from (the store keeps the serialized document
// each result answers; a repaint for a superseded request is dropped).
// Second, a network failure never silently leaves wrong numbers: it raises
// the stale banner and keeps the last result clearly marked.

import type { ExplorerClient } from "./api.js";
import { ScenarioDraft } from "./draft.js";
import type { ResultDocument, ScenarioDocument, WhatIfResponse } from "./types.js";

export interface Banner {
  kind: "stale" | "invalid";
  message: string;
}

export class ExplorerStore {
  draft: ScenarioDraft;
  result: ResultDocument | null = null;
  resultDocument: string | null = null;
  whatIf: WhatIfResponse | null = null;
  whatIfKey: string | null = null;
  banner: Banner | null = null;
  evaluateCalls = 0;

  private evaluationGeneration = 0;
  private whatIfGeneration = 0;
  private listeners: (() => void)[] = [];

  constructor(private readonly client: ExplorerClient, draft?: ScenarioDraft) {
    this.draft = draft ?? new ScenarioDraft();
  }

  subscribe(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  get resultIsCurrent(): boolean {
    if (this.result === null || this.resultDocument === null) return false;
    if (this.draft.validate().length > 0) return false;
    return this.resultDocument === JSON.stringify(this.draft.toDocument());
  }

  /** Commit the current draft: exactly one /evaluate per call, latest wins. */
  async commit(): Promise<void> {
    const issues = this.draft.validate();
    if (issues.length > 0) {
      this.banner = { kind: "invalid", message: issues[0]!.message };
      this.notify();
      return;
    }
    const document = this.draft.toDocument();
    const serialized = JSON.stringify(document);
    const generation = ++this.evaluationGeneration;
    this.evaluateCalls += 1;
    try {
      const result = await this.client.evaluate(document);
      if (generation !== this.evaluationGeneration) return; // superseded
      this.result = result;
      this.resultDocument = serialized;
      this.whatIf = null;
      this.whatIfKey = null;
      this.banner = null;
    } catch (err) {
      if (generation !== this.evaluationGeneration) return;
      this.banner = {
        kind: "stale",
        message: `evaluation failed, showing stale data: ${(err as Error).message}`,
      };
    }
    this.notify();
  }

  /** Fetch the 17-action sweep for hover previews; cached per (draft, agent). */
  async requestWhatIf(agentId: number): Promise<void> {
    if (this.draft.validate().length > 0) return;
    const document = this.draft.toDocument();
    const cacheKey = `${JSON.stringify(document)}#${agentId}`;
    if (this.whatIfKey === cacheKey) return;
    const generation = ++this.whatIfGeneration;
    try {
      const response = await this.client.whatIf(document, agentId);
      if (generation !== this.whatIfGeneration) return;
      this.whatIf = response;
      this.whatIfKey = cacheKey;
    } catch (err) {
      if (generation !== this.whatIfGeneration) return;
      this.banner = {
        kind: "stale",
        message: `what-if preview failed: ${(err as Error).message}`,
      };
    }
    this.notify();
  }

  async loadDocument(document: ScenarioDocument): Promise<void> {
    this.draft = ScenarioDraft.fromDocument(document);
    this.result = null;
    this.resultDocument = null;
    this.whatIf = null;
    this.whatIfKey = null;
    this.banner = null;
    await this.commit();
  }
}
