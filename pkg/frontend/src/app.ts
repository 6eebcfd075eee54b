/**
 * Browser wiring: paints the scene graph onto a canvas and hooks up the
 * basic edit/solve loop. All logic lives in document/render/client; this
 * file only translates DOM events and shapes.
 */

import { PlannerClient, ServiceError } from "./client.js";
import { FarmDocument, EditError } from "./document.js";
import { buildScene, type Scene } from "./render.js";
import type { StrategyPair } from "./types.js";

export function paintScene(ctx: CanvasRenderingContext2D, scene: Scene): void {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  for (const shape of scene.shapes) {
    switch (shape.kind) {
      case "edge": {
        ctx.beginPath();
        ctx.lineWidth = shape.strokeWidth;
        ctx.setLineDash(shape.dashed ? [6, 4] : []);
        ctx.strokeStyle = shape.dashed ? "#999" : "#1a5fb4";
        ctx.moveTo(shape.x1, shape.y1);
        ctx.lineTo(shape.x2, shape.y2);
        ctx.stroke();
        if (shape.label) {
          ctx.fillStyle = "#333";
          ctx.fillText(shape.label, (shape.x1 + shape.x2) / 2, (shape.y1 + shape.y2) / 2);
        }
        break;
      }
      case "turbine":
      case "substation": {
        ctx.beginPath();
        ctx.setLineDash([]);
        ctx.fillStyle = shape.kind === "turbine" ? "#26a269" : "#c01c28";
        const r = shape.kind === "turbine" ? 5 : 8;
        ctx.arc(shape.x, shape.y, shape.selected ? r + 3 : r, 0, 2 * Math.PI);
        ctx.fill();
        ctx.fillStyle = "#000";
        ctx.fillText(shape.label, shape.x + 10, shape.y - 10);
        break;
      }
      case "banner": {
        ctx.fillStyle = "#000";
        ctx.font = "16px sans-serif";
        ctx.fillText(shape.text, 12, 24);
        break;
      }
      case "badge": {
        if (shape.visible) {
          ctx.fillStyle = "#c01c28";
          ctx.fillText(shape.text, 12, 44);
        }
        break;
      }
    }
  }
}

export class PlannerApp {
  doc = new FarmDocument();
  private strategy: StrategyPair = { init: "collecting-dijkstra-any", delta: "inc-dec" };

  constructor(
    private readonly client: PlannerClient,
    private readonly ctx: CanvasRenderingContext2D,
    private readonly status: (message: string) => void,
  ) {}

  repaint(): void {
    paintScene(this.ctx, buildScene(this.doc, this.doc.lastSolve));
  }

  tryEdit(edit: (doc: FarmDocument) => void): void {
    try {
      edit(this.doc);
      this.status("");
    } catch (err) {
      if (err instanceof EditError) {
        this.status(err.message);
        return;
      }
      throw err;
    }
    this.repaint();
  }

  async solve(): Promise<void> {
    try {
      const response = await this.client.solve(this.doc.instance, this.strategy);
      this.doc.acceptSolve(response);
      this.status("");
    } catch (err) {
      if (err instanceof ServiceError) {
        this.status(err.message);
        return;
      }
      if ((err as Error).name === "AbortError") return; // replaced by a newer solve
      throw err;
    }
    this.repaint();
  }

  setStrategy(strategy: StrategyPair): void {
    this.strategy = strategy;
  }
}

export function mount(canvas: HTMLCanvasElement, statusEl: HTMLElement): PlannerApp {
  const client = new PlannerClient("");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");
  const app = new PlannerApp(client, ctx, (message) => {
    statusEl.textContent = message;
  });

  let nextId = 0;
  canvas.addEventListener("click", (ev) => {
    const rect = canvas.getBoundingClientRect();
    const x = ev.clientX - rect.left;
    const y = ev.clientY - rect.top;
    if (ev.shiftKey) {
      app.tryEdit((doc) => doc.addSubstation(`s${nextId++}`, x, y, 10));
    } else {
      app.tryEdit((doc) => doc.addTurbine(`t${nextId++}`, x, y));
    }
  });
  canvas.addEventListener("dblclick", () => void app.solve());
  return app;
}
