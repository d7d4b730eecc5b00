// Explorer view state <-> URL round-trip. Reloading a URL reproduces the
// identical grid because the state is exactly the set of parameters the
// instances endpoint accepts.

import type { BehaviorCase, Metric } from "./types.js";
import { CASES, METRICS } from "./types.js";

export interface ExplorerViewState {
  case?: BehaviorCase;
  label?: string;
  prediction?: string;
  correct?: boolean;
  rangeMetric?: Metric;
  min?: number;
  max?: number;
  sort?: Metric;
  dir: "asc" | "desc";
  page: number;
  pageSize: number;
  histogramMetric: Metric;
}

export const DEFAULT_STATE: ExplorerViewState = {
  dir: "asc",
  page: 0,
  pageSize: 20,
  histogramMetric: "iou",
};

export function encodeState(state: ExplorerViewState): URLSearchParams {
  const params = new URLSearchParams();
  if (state.case) params.set("case", state.case);
  if (state.label !== undefined) params.set("label", state.label);
  if (state.prediction !== undefined) params.set("prediction", state.prediction);
  if (state.correct !== undefined) params.set("correct", String(state.correct));
  if (state.rangeMetric) {
    params.set("metric", state.rangeMetric);
    if (state.min !== undefined) params.set("min", String(state.min));
    if (state.max !== undefined) params.set("max", String(state.max));
  }
  if (state.sort) {
    params.set("sort", state.sort);
    params.set("dir", state.dir);
  }
  if (state.page !== 0) params.set("page", String(state.page));
  if (state.pageSize !== DEFAULT_STATE.pageSize) {
    params.set("page_size", String(state.pageSize));
  }
  if (state.histogramMetric !== DEFAULT_STATE.histogramMetric) {
    params.set("hist", state.histogramMetric);
  }
  return params;
}

function asMetric(value: string | null): Metric | undefined {
  return METRICS.includes(value as Metric) ? (value as Metric) : undefined;
}

export function parseState(params: URLSearchParams): ExplorerViewState {
  const state: ExplorerViewState = { ...DEFAULT_STATE };
  const caseValue = params.get("case");
  if (caseValue && (CASES as readonly string[]).includes(caseValue)) {
    state.case = caseValue as BehaviorCase;
  }
  const label = params.get("label");
  if (label !== null) state.label = label;
  const prediction = params.get("prediction");
  if (prediction !== null) state.prediction = prediction;
  const correct = params.get("correct");
  if (correct === "true") state.correct = true;
  if (correct === "false") state.correct = false;
  const rangeMetric = asMetric(params.get("metric"));
  if (rangeMetric) {
    state.rangeMetric = rangeMetric;
    const min = params.get("min");
    const max = params.get("max");
    if (min !== null && Number.isFinite(Number(min))) state.min = Number(min);
    if (max !== null && Number.isFinite(Number(max))) state.max = Number(max);
  }
  const sort = asMetric(params.get("sort"));
  if (sort) {
    state.sort = sort;
    state.dir = params.get("dir") === "desc" ? "desc" : "asc";
  }
  const page = Number(params.get("page") ?? "0");
  if (Number.isInteger(page) && page >= 0) state.page = page;
  const pageSize = Number(params.get("page_size") ?? String(DEFAULT_STATE.pageSize));
  if (Number.isInteger(pageSize) && pageSize >= 1) state.pageSize = pageSize;
  const hist = asMetric(params.get("hist"));
  if (hist) state.histogramMetric = hist;
  return state;
}

// Query parameters for GET /api/instances under this view state.
export function instancesQuery(state: ExplorerViewState): URLSearchParams {
  const params = new URLSearchParams();
  if (state.case) params.set("case", state.case);
  if (state.label !== undefined) params.set("label", state.label);
  if (state.prediction !== undefined) params.set("prediction", state.prediction);
  if (state.correct !== undefined) params.set("correct", String(state.correct));
  if (state.rangeMetric) {
    params.set("metric", state.rangeMetric);
    if (state.min !== undefined) params.set("min", String(state.min));
    if (state.max !== undefined) params.set("max", String(state.max));
  }
  if (state.sort) {
    params.set("sort", state.sort);
    params.set("dir", state.dir);
  }
  params.set("offset", String(state.page * state.pageSize));
  params.set("limit", String(state.pageSize));
  return params;
}
