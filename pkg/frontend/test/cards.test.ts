import { describe, expect, it } from "vitest";

import { cardModel, gridModel } from "../src/cards.js";
import type { InstancePayload, InstancesResponse } from "../src/types.js";

function item(overrides: Partial<InstancePayload> = {}): InstancePayload {
  return {
    id: "inst0001",
    modality: "image",
    dims: [8, 8],
    label: "cab",
    prediction: "cab",
    task: "classification",
    correct: true,
    iou: 0.123456,
    gtc: 1,
    sc: 0.5,
    case: "sufficient_subset",
    flags: [],
    gt_rle: [0, 2],
    saliency_rle: [0, 1],
    tokens: null,
    has_image: false,
    ...overrides,
  };
}

describe("instance cards", () => {
  it("passes scores through at display precision", () => {
    const model = cardModel(item());
    expect(model.scoreLines).toEqual(["iou 0.123", "gtc 1.000", "sc 0.500"]);
    expect(model.caseName).toBe("sufficient_subset");
  });

  it("tones prediction by correctness", () => {
    expect(cardModel(item()).predictionTone).toBe("correct");
    expect(
      cardModel(item({ correct: false, prediction: "moped" })).predictionTone,
    ).toBe("incorrect");
  });

  it("surfaces flags", () => {
    expect(cardModel(item({ flags: ["empty_saliency"] })).flags).toEqual([
      "empty_saliency",
    ]);
  });

  it("shows an explicit empty state", () => {
    const response: InstancesResponse = { total: 0, offset: 0, limit: 20, items: [] };
    const grid = gridModel(response, 0, 20);
    expect(grid.cards).toEqual([]);
    expect(grid.emptyMessage).toMatch(/no instances/i);
    expect(grid.pageText).toBe("0-0 of 0");
  });

  it("reports the page window", () => {
    const response: InstancesResponse = {
      total: 45,
      offset: 20,
      limit: 20,
      items: [item(), item({ id: "inst0002" })],
    };
    const grid = gridModel(response, 1, 20);
    expect(grid.emptyMessage).toBeNull();
    expect(grid.pageText).toBe("21-22 of 45");
  });
});
