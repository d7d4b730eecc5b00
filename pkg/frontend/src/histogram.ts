// Histogram view-models and the range-selection -> filter mapping.

import type { HistogramPayload, Metric } from "./types.js";

export interface HistogramBar {
  binIndex: number;
  from: number;
  to: number;
  count: number;
  // height as a fraction of the tallest bar, for rendering
  weight: number;
  highlighted: boolean;
}

export function histogramBars(
  payload: HistogramPayload,
  selection?: { min: number; max: number },
): HistogramBar[] {
  const peak = Math.max(1, ...payload.counts);
  return payload.counts.map((count, binIndex) => {
    const from = payload.bin_edges[binIndex];
    const to = payload.bin_edges[binIndex + 1];
    const highlighted =
      selection !== undefined && from >= selection.min && to <= selection.max;
    return { binIndex, from, to, count, weight: count / peak, highlighted };
  });
}

// Selecting bins [firstBin, lastBin] maps to the inclusive metric range
// filter the API expects (e.g. bins 7..9 -> min 0.7, max 1.0).
export function selectionToRange(
  metric: Metric,
  firstBin: number,
  lastBin: number,
): { metric: Metric; min: number; max: number } {
  const lo = Math.min(firstBin, lastBin);
  const hi = Math.max(firstBin, lastBin);
  return { metric, min: lo / 10, max: (hi + 1) / 10 };
}
