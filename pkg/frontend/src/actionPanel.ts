// View model for the per-agent action strip: all 17 actions in catalog
// order, feasibility highlighting, and the hover-preview of the actor's
// responsibility row fetched from /whatif.

import { formatDisplay } from "./heatmap.js";
import { ACTION_CATALOG, type ResultDocument, type WhatIfResponse } from "./types.js";

export interface PreviewValue {
  affected: number;
  value: number;
  text: string;
}

export interface ActionStripEntry {
  code: string;
  selected: boolean;
  feasible: boolean;
  preview: PreviewValue[] | null;
  previewFeasible: boolean | null;
}

export function actionStrip(
  agentId: number,
  selectedCode: string,
  result: ResultDocument | null,
  whatIf: WhatIfResponse | null,
  hoveredCode: string | null,
): ActionStripEntry[] {
  const feasibleNow = new Set(
    result?.feasibility.actual[String(agentId)]?.feasible ?? [],
  );
  const entriesByCode = new Map(
    (whatIf?.agent === agentId ? whatIf.entries : []).map((e) => [e.action, e]),
  );
  return ACTION_CATALOG.map((code) => {
    const hovered = hoveredCode === code ? entriesByCode.get(code) : undefined;
    let preview: PreviewValue[] | null = null;
    if (hovered) {
      preview = Object.entries(hovered.fear_row_display)
        .map(([affected, display]) => ({
          affected: Number(affected),
          value: hovered.fear_row[affected]!,
          text: formatDisplay(display),
        }))
        .sort((a, b) => a.affected - b.affected);
    }
    return {
      code,
      selected: code === selectedCode,
      feasible: feasibleNow.has(code),
      preview,
      previewFeasible: hovered ? hovered.feasible : null,
    };
  });
}
