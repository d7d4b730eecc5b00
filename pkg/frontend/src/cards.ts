// Pure view-models for instance cards: every value is a passthrough from
// the API payload, formatted but never recomputed.

import type { InstancePayload, InstancesResponse } from "./types.js";

export interface CardModel {
  id: string;
  labelText: string;
  predictionText: string;
  predictionTone: "correct" | "incorrect";
  scoreLines: string[];
  caseName: string;
  flags: string[];
}

export function formatScore(value: number): string {
  return value.toFixed(3);
}

export function cardModel(item: InstancePayload): CardModel {
  return {
    id: item.id,
    labelText: `label: ${String(item.label)}`,
    predictionText: `prediction: ${String(item.prediction)}`,
    predictionTone: item.correct ? "correct" : "incorrect",
    scoreLines: [
      `iou ${formatScore(item.iou)}`,
      `gtc ${formatScore(item.gtc)}`,
      `sc ${formatScore(item.sc)}`,
    ],
    caseName: item.case,
    flags: item.flags,
  };
}

export interface GridModel {
  cards: CardModel[];
  emptyMessage: string | null;
  pageText: string;
}

export function gridModel(
  response: InstancesResponse,
  page: number,
  pageSize: number,
): GridModel {
  const cards = response.items.map(cardModel);
  const first = response.total === 0 ? 0 : page * pageSize + 1;
  const last = page * pageSize + cards.length;
  return {
    cards,
    emptyMessage:
      response.total === 0 ? "No instances match the current filters." : null,
    pageText: `${first}-${last} of ${response.total}`,
  };
}
