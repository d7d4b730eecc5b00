// Loads the committed probe round-trip fixture shared with the backend
// test suite (fixtures/probe at the repository root).

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

export interface ProbeFixture {
  image_id: string;
  dims: number[];
  brush: { cx: number; cy: number; radius: number };
  metric: "iou" | "gtc" | "sc";
  k: number;
  annotation: number[];
  annotation_runs: number[];
  expected: { rank: number; class_name: string; score: number; line: string }[];
}

export function loadProbeFixture(): ProbeFixture {
  const here = dirname(fileURLToPath(import.meta.url));
  const path = join(here, "..", "..", "fixtures", "probe", "roundtrip.json");
  return JSON.parse(readFileSync(path, "utf-8")) as ProbeFixture;
}
