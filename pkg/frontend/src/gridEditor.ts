// Canvas rendering and hit-testing for the scenario grid editor.

import type { ScenarioDraft } from "./draft.js";
import type { DrawSurface } from "./heatmap.js";

export interface GridLayout {
  cellSize: number;
  padding: number;
}

export const DEFAULT_GRID_LAYOUT: GridLayout = { cellSize: 42, padding: 10 };

export function canvasSize(draft: ScenarioDraft, layout = DEFAULT_GRID_LAYOUT) {
  return {
    width: draft.width * layout.cellSize + 2 * layout.padding,
    height: draft.height * layout.cellSize + 2 * layout.padding,
  };
}

export function cellAtPixel(
  draft: ScenarioDraft,
  px: number,
  py: number,
  layout = DEFAULT_GRID_LAYOUT,
): [number, number] | null {
  const x = Math.floor((px - layout.padding) / layout.cellSize);
  const y = Math.floor((py - layout.padding) / layout.cellSize);
  return draft.inBounds(x, y) ? [x, y] : null;
}

const AGENT_COLORS = ["#e6742c", "#2c8ae6", "#3cb15c", "#a45ce6", "#e6c42c", "#e62c7c"];

export function agentColor(id: number): string {
  return AGENT_COLORS[(id - 1) % AGENT_COLORS.length]!;
}

interface EditorSurface extends DrawSurface {
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  stroke(): void;
}

export function renderGrid(
  ctx: EditorSurface,
  draft: ScenarioDraft,
  layout = DEFAULT_GRID_LAYOUT,
): void {
  const { cellSize, padding } = layout;
  const { width, height } = canvasSize(draft, layout);
  ctx.clearRect(0, 0, width, height);

  for (let y = 0; y < draft.height; y++) {
    for (let x = 0; x < draft.width; x++) {
      ctx.fillStyle = draft.isValidCell(x, y) ? "#fdfdf8" : "#3b3b40";
      ctx.fillRect(padding + x * cellSize, padding + y * cellSize, cellSize - 1, cellSize - 1);
      ctx.strokeStyle = "#c9c9c2";
      ctx.lineWidth = 1;
      ctx.strokeRect(padding + x * cellSize, padding + y * cellSize, cellSize - 1, cellSize - 1);
    }
  }

  ctx.font = "13px sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  for (const agent of draft.agents) {
    const cx = padding + agent.x * cellSize + cellSize / 2;
    const cy = padding + agent.y * cellSize + cellSize / 2;
    ctx.beginPath();
    ctx.arc(cx, cy, cellSize * 0.34, 0, Math.PI * 2);
    ctx.fillStyle = agentColor(agent.id);
    ctx.fill();
    if (agent.id === draft.activeAgent) {
      ctx.strokeStyle = "#111111";
      ctx.lineWidth = 2.5;
      ctx.stroke();
    }
    ctx.fillStyle = "#ffffff";
    ctx.fillText(String(agent.id), cx, cy);
  }
}
