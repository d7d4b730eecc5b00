// Probe view: brush an annotation over the image grid, POST it, and show
// the top-k classes with their saliency sets.

import { fetchStacks, postProbe } from "./api.js";
import { applyStroke } from "./brush.js";
import { encodeRuns, decodeRuns } from "./rle.js";
import { probeRows } from "./probeView.js";
import { GT_COLOR, SALIENCY_COLOR, BACKGROUND_COLOR } from "./overlay.js";
import type { Metric, StackInfo } from "./types.js";
import { METRICS } from "./types.js";

export interface ProbeSessionState {
  stack: StackInfo;
  annotation: Set<number>;
  metric: Metric;
  k: number;
  brushRadius: number;
  erasing: boolean;
}

const CELL = 18;

function drawAnnotation(canvas: HTMLCanvasElement, session: ProbeSessionState): void {
  const [h, w] = session.stack.dims;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.fillStyle = BACKGROUND_COLOR;
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "rgba(255,255,255,0.08)";
  for (let row = 0; row <= h; row += 1) {
    ctx.beginPath();
    ctx.moveTo(0, row * CELL);
    ctx.lineTo(w * CELL, row * CELL);
    ctx.stroke();
  }
  for (let col = 0; col <= w; col += 1) {
    ctx.beginPath();
    ctx.moveTo(col * CELL, 0);
    ctx.lineTo(col * CELL, h * CELL);
    ctx.stroke();
  }
  ctx.fillStyle = GT_COLOR;
  for (const index of session.annotation) {
    const row = Math.floor(index / w);
    const col = index % w;
    ctx.fillRect(col * CELL + 1, row * CELL + 1, CELL - 2, CELL - 2);
  }
}

function drawResultOverlay(
  canvas: HTMLCanvasElement,
  dims: number[],
  featureRuns: number[],
): void {
  const [h, w] = dims;
  canvas.width = w * 6;
  canvas.height = h * 6;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.fillStyle = BACKGROUND_COLOR;
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = SALIENCY_COLOR;
  for (const index of decodeRuns(featureRuns)) {
    const row = Math.floor(index / w);
    const col = index % w;
    ctx.fillRect(col * 6, row * 6, 6, 6);
  }
}

export async function renderProber(root: HTMLElement): Promise<void> {
  root.textContent = "";
  let stacks: StackInfo[];
  try {
    stacks = await fetchStacks();
  } catch (err) {
    const el = document.createElement("div");
    el.className = "error-banner";
    el.textContent = `API unreachable: ${err instanceof Error ? err.message : String(err)}`;
    root.appendChild(el);
    return;
  }
  if (stacks.length === 0) {
    const el = document.createElement("div");
    el.className = "empty-state";
    el.textContent = "No probe stacks loaded (start the server with --stack).";
    root.appendChild(el);
    return;
  }

  const session: ProbeSessionState = {
    stack: stacks[0],
    annotation: new Set<number>(),
    metric: "iou",
    k: 3,
    brushRadius: 2,
    erasing: false,
  };

  const layout = document.createElement("div");
  layout.className = "probe-layout";

  const left = document.createElement("div");
  const controls = document.createElement("div");
  controls.className = "controls";

  const stackSelect = document.createElement("select");
  for (const stack of stacks) {
    const opt = document.createElement("option");
    opt.value = stack.image_id;
    opt.textContent = `${stack.image_id} (${stack.classes} classes)`;
    stackSelect.appendChild(opt);
  }
  stackSelect.onchange = () => {
    session.stack = stacks.find((s) => s.image_id === stackSelect.value) ?? stacks[0];
    session.annotation = new Set();
    refresh();
  };
  controls.appendChild(stackSelect);

  const metricSelect = document.createElement("select");
  for (const metric of METRICS) {
    const opt = document.createElement("option");
    opt.value = metric;
    opt.textContent = metric;
    metricSelect.appendChild(opt);
  }
  metricSelect.onchange = () => {
    session.metric = metricSelect.value as Metric;
    void runProbe();
  };
  controls.appendChild(metricSelect);

  const eraser = document.createElement("button");
  eraser.textContent = "eraser: off";
  eraser.onclick = () => {
    session.erasing = !session.erasing;
    eraser.textContent = `eraser: ${session.erasing ? "on" : "off"}`;
  };
  controls.appendChild(eraser);

  const clear = document.createElement("button");
  clear.textContent = "clear";
  clear.onclick = () => {
    session.annotation = new Set();
    refresh();
  };
  controls.appendChild(clear);

  const probeButton = document.createElement("button");
  probeButton.className = "primary";
  probeButton.textContent = "probe";
  controls.appendChild(probeButton);

  const hint = document.createElement("div");
  hint.className = "muted";
  left.appendChild(controls);

  const canvas = document.createElement("canvas");
  canvas.className = "brush-canvas";
  const [h, w] = session.stack.dims;
  canvas.width = w * CELL;
  canvas.height = h * CELL;
  left.appendChild(canvas);
  left.appendChild(hint);

  const results = document.createElement("div");
  results.className = "probe-results";

  layout.append(left, results);
  root.appendChild(layout);

  function refresh(): void {
    drawAnnotation(canvas, session);
    const empty = session.annotation.size === 0;
    probeButton.disabled = empty;
    hint.textContent = empty
      ? "Brush a region first; probing needs a non-empty annotation."
      : `${session.annotation.size} annotated features`;
  }

  let painting = false;
  const paintAt = (event: MouseEvent) => {
    const rect = canvas.getBoundingClientRect();
    const col = Math.floor((event.clientX - rect.left) / CELL);
    const row = Math.floor((event.clientY - rect.top) / CELL);
    session.annotation = applyStroke(
      session.annotation,
      { cx: col, cy: row, radius: session.brushRadius },
      session.stack.dims,
      session.erasing,
    );
    refresh();
  };
  canvas.onmousedown = (event) => {
    painting = true;
    paintAt(event);
  };
  canvas.onmousemove = (event) => {
    if (painting) paintAt(event);
  };
  window.addEventListener("mouseup", () => {
    painting = false;
  });

  async function runProbe(): Promise<void> {
    if (session.annotation.size === 0) return;
    results.textContent = "probing...";
    try {
      const response = await postProbe(
        session.stack.image_id,
        encodeRuns(session.annotation),
        session.metric,
        session.k,
      );
      results.textContent = "";
      for (const row of probeRows(response)) {
        const card = document.createElement("div");
        card.className = "card";
        const overlay = document.createElement("canvas");
        drawResultOverlay(overlay, session.stack.dims, row.featuresRuns);
        card.appendChild(overlay);
        const text = document.createElement("div");
        text.className = "card-title";
        text.textContent = `${row.rank}. ${row.className}`;
        card.appendChild(text);
        const score = document.createElement("div");
        score.className = "scores";
        score.textContent = `${session.metric} ${row.scoreText}`;
        card.appendChild(score);
        results.appendChild(card);
      }
    } catch (err) {
      results.textContent = "";
      const el = document.createElement("div");
      el.className = "error-banner";
      el.textContent = err instanceof Error ? err.message : String(err);
      results.appendChild(el);
    }
  }
  probeButton.onclick = () => void runProbe();

  refresh();
}
