// Canvas rendering of ground-truth (yellow) and saliency (orange)
// feature sets over the instance grid; overlap blends both.

import { decodeRuns } from "./rle.js";
import type { InstancePayload } from "./types.js";

export const GT_COLOR = "rgba(250, 204, 21, 0.85)"; // yellow
export const SALIENCY_COLOR = "rgba(249, 115, 22, 0.85)"; // orange
export const OVERLAP_COLOR = "rgba(217, 119, 6, 0.95)"; // blended
export const BACKGROUND_COLOR = "#1f2430";

export function drawOverlay(
  canvas: HTMLCanvasElement,
  dims: number[],
  gtRuns: number[],
  saliencyRuns: number[],
  cellSize = 6,
): void {
  const [h, w] = dims;
  canvas.width = w * cellSize;
  canvas.height = h * cellSize;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.fillStyle = BACKGROUND_COLOR;
  ctx.fillRect(0, 0, canvas.width, canvas.height);

  const gt = new Set(decodeRuns(gtRuns));
  const saliency = new Set(decodeRuns(saliencyRuns));
  const paint = (index: number, color: string) => {
    const row = Math.floor(index / w);
    const col = index % w;
    ctx.fillStyle = color;
    ctx.fillRect(col * cellSize, row * cellSize, cellSize, cellSize);
  };
  for (const index of gt) {
    paint(index, saliency.has(index) ? OVERLAP_COLOR : GT_COLOR);
  }
  for (const index of saliency) {
    if (!gt.has(index)) paint(index, SALIENCY_COLOR);
  }
}

export function renderTokens(
  container: HTMLElement,
  item: InstancePayload,
): void {
  container.textContent = "";
  const gt = new Set(decodeRuns(item.gt_rle));
  const saliency = new Set(decodeRuns(item.saliency_rle));
  (item.tokens ?? []).forEach((token, index) => {
    const span = document.createElement("span");
    span.textContent = token;
    span.className = "token";
    if (gt.has(index) && saliency.has(index)) span.classList.add("tok-both");
    else if (gt.has(index)) span.classList.add("tok-gt");
    else if (saliency.has(index)) span.classList.add("tok-sal");
    container.appendChild(span);
    container.appendChild(document.createTextNode(" "));
  });
}
