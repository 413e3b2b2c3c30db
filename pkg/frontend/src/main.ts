// DOM bootstrap: wires the draft, the explorer API client, and the canvases.

import { ExplorerClient } from "./api.js";
import { actionStrip } from "./actionPanel.js";
import { agentColor, canvasSize, cellAtPixel, renderGrid } from "./gridEditor.js";
import { renderHeatmap } from "./heatmap.js";
import { ExplorerStore } from "./store.js";
import { ACTION_CATALOG } from "./types.js";

type Tool = "select" | "cell" | "agent" | "erase";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function main(): void {
  const client = new ExplorerClient(
    (window as { FEAR_API_URL?: string }).FEAR_API_URL ?? "http://127.0.0.1:8000",
  );
  const store = new ExplorerStore(client);

  const gridCanvas = el<HTMLCanvasElement>("grid");
  const heatmapCanvas = el<HTMLCanvasElement>("heatmap");
  const bannerBox = el<HTMLDivElement>("banner");
  const agentPanel = el<HTMLDivElement>("agents");
  const fixturePicker = el<HTMLSelectElement>("fixtures");
  const toolButtons = Array.from(
    document.querySelectorAll<HTMLButtonElement>("button[data-tool]"),
  );

  let tool: Tool = "select";
  let message = "";

  function setMessage(text: string | null): void {
    message = text ?? "";
    bannerBox.textContent = "";
    if (store.banner) {
      const alert = document.createElement("div");
      alert.className = `alert ${store.banner.kind}`;
      alert.textContent = store.banner.message;
      bannerBox.appendChild(alert);
    }
    if (message) {
      const note = document.createElement("div");
      note.className = "alert note";
      note.textContent = message;
      bannerBox.appendChild(note);
    }
  }

  function repaintGrid(): void {
    const size = canvasSize(store.draft);
    gridCanvas.width = size.width;
    gridCanvas.height = size.height;
    const ctx = gridCanvas.getContext("2d");
    if (ctx) renderGrid(ctx, store.draft);
  }

  function repaintHeatmap(): void {
    const ctx = heatmapCanvas.getContext("2d");
    if (!ctx) return;
    if (!store.result) {
      ctx.clearRect(0, 0, heatmapCanvas.width, heatmapCanvas.height);
      return;
    }
    const k = store.result.agent_ids.length;
    heatmapCanvas.width = 28 + k * 56 + 4;
    heatmapCanvas.height = 28 + k * 56 + 4;
    renderHeatmap(ctx, store.result);
    heatmapCanvas.style.opacity = store.resultIsCurrent ? "1" : "0.45";
  }

  function repaintAgents(): void {
    agentPanel.textContent = "";
    for (const agent of store.draft.agents) {
      const box = document.createElement("div");
      box.className = "agent";
      const title = document.createElement("h3");
      title.textContent = `agent ${agent.id} @ (${agent.x}, ${agent.y})`;
      title.style.color = agentColor(agent.id);
      box.appendChild(title);

      const mdrLabel = document.createElement("label");
      mdrLabel.textContent = "MdR ";
      const mdrPick = document.createElement("select");
      for (const code of ACTION_CATALOG) {
        const option = document.createElement("option");
        option.value = code;
        option.textContent = code;
        option.selected = store.draft.mdr.get(agent.id) === code;
        mdrPick.appendChild(option);
      }
      mdrPick.addEventListener("change", () => {
        store.draft.setMdr(agent.id, mdrPick.value);
        void store.commit();
      });
      mdrLabel.appendChild(mdrPick);
      box.appendChild(mdrLabel);

      const strip = document.createElement("div");
      strip.className = "strip";
      const entries = actionStrip(
        agent.id,
        store.draft.actions.get(agent.id) ?? "S0",
        store.result,
        store.whatIf,
        agent.id === store.draft.activeAgent ? store.draft.hoveredAction : null,
      );
      for (const entry of entries) {
        const button = document.createElement("button");
        button.textContent = entry.code;
        button.className = [
          "action",
          entry.feasible ? "feasible" : "infeasible",
          entry.selected ? "selected" : "",
        ].join(" ");
        button.addEventListener("mouseenter", () => {
          store.draft.activeAgent = agent.id;
          store.draft.hoveredAction = entry.code;
          void store.requestWhatIf(agent.id).then(repaintAll);
          repaintAll();
        });
        button.addEventListener("mouseleave", () => {
          if (store.draft.hoveredAction === entry.code) store.draft.hoveredAction = null;
          repaintAll();
        });
        button.addEventListener("click", () => {
          store.draft.setAction(agent.id, entry.code);
          void store.commit();
        });
        strip.appendChild(button);
        if (entry.preview) {
          const preview = document.createElement("span");
          preview.className = "preview";
          preview.textContent = entry.preview
            .map((p) => `fear(${agent.id},${p.affected}) = ${p.text}`)
            .join("  ");
          strip.appendChild(preview);
        }
      }
      box.appendChild(strip);
      agentPanel.appendChild(box);
    }
  }

  function repaintAll(): void {
    repaintGrid();
    repaintHeatmap();
    repaintAgents();
    setMessage(message);
  }

  store.subscribe(repaintAll);

  gridCanvas.addEventListener("click", (event) => {
    const rect = gridCanvas.getBoundingClientRect();
    const cell = cellAtPixel(store.draft, event.clientX - rect.left, event.clientY - rect.top);
    if (!cell) return;
    const [x, y] = cell;
    let rejection: string | null = null;
    if (tool === "cell") rejection = store.draft.toggleCell(x, y);
    else if (tool === "agent") rejection = store.draft.placeAgent(x, y);
    else if (tool === "erase") {
      const occupant = store.draft.agentAt(x, y);
      rejection = occupant ? store.draft.deleteAgent(occupant.id) : "no agent there";
    } else {
      const occupant = store.draft.agentAt(x, y);
      if (occupant) store.draft.activeAgent = occupant.id;
      else if (store.draft.activeAgent !== null)
        rejection = store.draft.moveAgent(store.draft.activeAgent, x, y);
    }
    setMessage(rejection);
    if (!rejection) void store.commit();
    repaintAll();
  });

  for (const button of toolButtons) {
    button.addEventListener("click", () => {
      tool = (button.dataset.tool as Tool) ?? "select";
      toolButtons.forEach((b) => b.classList.toggle("active", b === button));
    });
  }

  void client
    .fixtures()
    .then((fixtures) => {
      for (const name of Object.keys(fixtures)) {
        const option = document.createElement("option");
        option.value = name;
        option.textContent = name;
        fixturePicker.appendChild(option);
      }
      fixturePicker.addEventListener("change", () => {
        const doc = fixtures[fixturePicker.value];
        if (doc) void store.loadDocument(doc);
      });
    })
    .catch(() => setMessage("could not load fixtures; is the API running?"));

  void store.commit().then(repaintAll);
  repaintAll();
}

window.addEventListener("DOMContentLoaded", main);
