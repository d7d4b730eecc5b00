// Explorer view: filter controls, linked histograms, and the card grid.
// State lives in the URL; changing a control re-encodes it and re-fetches.

import { fetchInstances, fetchSummary } from "./api.js";
import { gridModel } from "./cards.js";
import { histogramBars, selectionToRange } from "./histogram.js";
import { drawOverlay, renderTokens } from "./overlay.js";
import type { ExplorerViewState } from "./state.js";
import { encodeState, parseState } from "./state.js";
import type { Metric, SummaryResponse } from "./types.js";
import { CASES, METRICS } from "./types.js";

let inflight = 0; // latest-wins: stale responses are dropped

function option(value: string, text?: string): HTMLOptionElement {
  const el = document.createElement("option");
  el.value = value;
  el.textContent = text ?? value;
  return el;
}

function readState(): ExplorerViewState {
  return parseState(new URLSearchParams(window.location.hash.split("?")[1] ?? ""));
}

function writeState(state: ExplorerViewState): void {
  const params = encodeState(state).toString();
  window.location.hash = params ? `#/explorer?${params}` : "#/explorer";
}

function banner(root: HTMLElement, message: string): void {
  const el = document.createElement("div");
  el.className = "error-banner";
  el.textContent = message;
  root.prepend(el);
}

function renderControls(
  root: HTMLElement,
  state: ExplorerViewState,
  summary: SummaryResponse,
): void {
  const bar = document.createElement("div");
  bar.className = "controls";

  const caseSelect = document.createElement("select");
  caseSelect.appendChild(option("", "all cases"));
  for (const name of CASES) caseSelect.appendChild(option(name));
  caseSelect.value = state.case ?? "";
  caseSelect.onchange = () => {
    const next = { ...state, page: 0 };
    if (caseSelect.value) next.case = caseSelect.value as ExplorerViewState["case"];
    else delete next.case;
    writeState(next);
  };
  bar.appendChild(caseSelect);

  const correctSelect = document.createElement("select");
  correctSelect.appendChild(option("", "all predictions"));
  correctSelect.appendChild(option("true", "correct"));
  correctSelect.appendChild(option("false", "incorrect"));
  correctSelect.value = state.correct === undefined ? "" : String(state.correct);
  correctSelect.onchange = () => {
    const next = { ...state, page: 0 };
    if (correctSelect.value === "") delete next.correct;
    else next.correct = correctSelect.value === "true";
    writeState(next);
  };
  bar.appendChild(correctSelect);

  const sortSelect = document.createElement("select");
  sortSelect.appendChild(option("", "manifest order"));
  for (const metric of METRICS) {
    sortSelect.appendChild(option(`${metric}:asc`, `${metric} increasing`));
    sortSelect.appendChild(option(`${metric}:desc`, `${metric} decreasing`));
  }
  sortSelect.value = state.sort ? `${state.sort}:${state.dir}` : "";
  sortSelect.onchange = () => {
    const next = { ...state, page: 0 };
    if (sortSelect.value === "") {
      delete next.sort;
      next.dir = "asc";
    } else {
      const [metric, dir] = sortSelect.value.split(":");
      next.sort = metric as Metric;
      next.dir = dir as "asc" | "desc";
    }
    writeState(next);
  };
  bar.appendChild(sortSelect);

  if (state.rangeMetric) {
    const chip = document.createElement("button");
    chip.className = "chip";
    chip.textContent = `${state.rangeMetric} ∈ [${state.min ?? 0}, ${state.max ?? 1}] ✕`;
    chip.onclick = () => {
      const next = { ...state, page: 0 };
      delete next.rangeMetric;
      delete next.min;
      delete next.max;
      writeState(next);
    };
    bar.appendChild(chip);
  }

  const count = document.createElement("span");
  count.className = "muted";
  count.textContent = `${summary.instances} instances`;
  bar.appendChild(count);

  root.appendChild(bar);
}

function renderHistograms(
  root: HTMLElement,
  state: ExplorerViewState,
  summary: SummaryResponse,
): void {
  const panel = document.createElement("div");
  panel.className = "histograms";
  for (const metric of METRICS) {
    const block = document.createElement("div");
    block.className = "histogram";
    const title = document.createElement("div");
    title.className = "hist-title";
    title.textContent = metric;
    block.appendChild(title);
    const selection =
      state.rangeMetric === metric && state.min !== undefined && state.max !== undefined
        ? { min: state.min, max: state.max }
        : undefined;
    const bars = histogramBars(summary.histograms[metric], selection);
    const row = document.createElement("div");
    row.className = "hist-bars";
    for (const bar of bars) {
      const el = document.createElement("div");
      el.className = "hist-bar" + (bar.highlighted ? " highlighted" : "");
      el.style.height = `${Math.round(bar.weight * 48) + 2}px`;
      el.title = `[${bar.from.toFixed(1)}, ${bar.to.toFixed(1)}): ${bar.count}`;
      el.onclick = () => {
        const range = selectionToRange(metric, bar.binIndex, 9);
        writeState({ ...state, ...{ rangeMetric: range.metric, min: range.min, max: range.max }, page: 0 });
      };
      row.appendChild(el);
    }
    block.appendChild(row);
    panel.appendChild(block);
  }
  root.appendChild(panel);
}

export async function renderExplorer(root: HTMLElement): Promise<void> {
  const state = readState();
  root.textContent = "";
  const ticket = ++inflight;
  try {
    const [summary, response] = await Promise.all([
      fetchSummary(),
      fetchInstances(state),
    ]);
    if (ticket !== inflight) return; // a newer render started meanwhile

    renderControls(root, state, summary);
    renderHistograms(root, state, summary);

    const grid = gridModel(response, state.page, state.pageSize);
    const gridEl = document.createElement("div");
    gridEl.className = "grid";
    if (grid.emptyMessage) {
      const empty = document.createElement("div");
      empty.className = "empty-state";
      empty.textContent = grid.emptyMessage;
      gridEl.appendChild(empty);
    }
    response.items.forEach((item, i) => {
      const model = grid.cards[i];
      const card = document.createElement("div");
      card.className = "card";

      if (item.modality === "image") {
        const canvas = document.createElement("canvas");
        canvas.className = "card-canvas";
        drawOverlay(canvas, item.dims, item.gt_rle, item.saliency_rle);
        card.appendChild(canvas);
      } else {
        const tokens = document.createElement("div");
        tokens.className = "card-tokens";
        renderTokens(tokens, item);
        card.appendChild(tokens);
      }

      const title = document.createElement("div");
      title.className = "card-title";
      title.textContent = model.id;
      card.appendChild(title);

      const label = document.createElement("div");
      label.className = "muted";
      label.textContent = model.labelText;
      card.appendChild(label);

      const prediction = document.createElement("div");
      prediction.className = `prediction ${model.predictionTone}`;
      prediction.textContent = model.predictionText;
      card.appendChild(prediction);

      const scores = document.createElement("div");
      scores.className = "scores";
      scores.textContent = model.scoreLines.join("  ");
      card.appendChild(scores);

      const caseEl = document.createElement("div");
      caseEl.className = "case-tag";
      caseEl.textContent = model.caseName + (model.flags.length ? ` [${model.flags.join(",")}]` : "");
      card.appendChild(caseEl);

      gridEl.appendChild(card);
    });
    root.appendChild(gridEl);

    const pager = document.createElement("div");
    pager.className = "pager";
    const prev = document.createElement("button");
    prev.textContent = "← prev";
    prev.disabled = state.page === 0;
    prev.onclick = () => writeState({ ...state, page: state.page - 1 });
    const next = document.createElement("button");
    next.textContent = "next →";
    next.disabled = (state.page + 1) * state.pageSize >= response.total;
    next.onclick = () => writeState({ ...state, page: state.page + 1 });
    const text = document.createElement("span");
    text.className = "muted";
    text.textContent = grid.pageText;
    pager.append(prev, text, next);
    root.appendChild(pager);
  } catch (err) {
    if (ticket !== inflight) return;
    banner(root, `API unreachable: ${err instanceof Error ? err.message : String(err)}`);
  }
}
