// View model and canvas renderer for the k x k responsibility heatmap.
//
// Display parity rule: the text in every cell is the API's display copy,
// formatted but never re-rounded on the client.

import { divergingColor, textColor } from "./colors.js";
import type { ResultDocument } from "./types.js";

export interface HeatmapCell {
  row: number;
  col: number;
  actor: number;
  affected: number;
  value: number;
  text: string;
  fill: string;
  ink: string;
  diagonal: boolean;
}

export function formatDisplay(displayValue: number, decimals = 2): string {
  // the API already rounded; toFixed only pads, e.g. 1 -> "1.00"
  return displayValue.toFixed(decimals);
}

export function heatmapCells(result: ResultDocument): HeatmapCell[] {
  const ids = result.agent_ids;
  const cells: HeatmapCell[] = [];
  for (let row = 0; row < ids.length; row++) {
    for (let col = 0; col < ids.length; col++) {
      const display = result.fear_display[row]![col]!;
      const value = result.fear[row]![col]!;
      cells.push({
        row,
        col,
        actor: ids[row]!,
        affected: ids[col]!,
        value,
        text: formatDisplay(display),
        fill: divergingColor(value),
        ink: textColor(value),
        diagonal: row === col,
      });
    }
  }
  return cells;
}

export interface HeatmapLayout {
  cellSize: number;
  margin: number;
}

// The 2D context surface the renderer needs; CanvasRenderingContext2D
// satisfies it, and tests can record calls.
export interface DrawSurface {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  textAlign: CanvasTextAlign;
  textBaseline: CanvasTextBaseline;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
  clearRect(x: number, y: number, w: number, h: number): void;
}

export function renderHeatmap(
  ctx: DrawSurface,
  result: ResultDocument,
  layout: HeatmapLayout = { cellSize: 56, margin: 28 },
): void {
  const { cellSize, margin } = layout;
  const k = result.agent_ids.length;
  ctx.clearRect(0, 0, margin + k * cellSize + 4, margin + k * cellSize + 4);

  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  for (let i = 0; i < k; i++) {
    ctx.fillStyle = "#333333";
    ctx.fillText(String(result.agent_ids[i]), margin + i * cellSize + cellSize / 2, margin / 2);
    ctx.fillText(String(result.agent_ids[i]), margin / 2, margin + i * cellSize + cellSize / 2);
  }

  for (const cell of heatmapCells(result)) {
    const x = margin + cell.col * cellSize;
    const y = margin + cell.row * cellSize;
    ctx.fillStyle = cell.fill;
    ctx.fillRect(x, y, cellSize, cellSize);
    if (cell.diagonal) {
      // action-space "remaining" cells carry a distinct white outline
      ctx.strokeStyle = "#ffffff";
      ctx.lineWidth = 3;
      ctx.strokeRect(x + 2, y + 2, cellSize - 4, cellSize - 4);
    }
    ctx.fillStyle = cell.ink;
    ctx.fillText(cell.text, x + cellSize / 2, y + cellSize / 2);
  }
}
