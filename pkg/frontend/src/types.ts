// Wire formats of the backing HTTP API. The UI never recomputes scores;
// every number displayed comes from these payloads.

export type Metric = "iou" | "gtc" | "sc";

export const METRICS: Metric[] = ["iou", "gtc", "sc"];

export const CASES = [
  "human_aligned",
  "sufficient_subset",
  "sufficient_context",
  "context_dependent",
  "confuser",
  "insufficient_subset",
  "distractor",
  "context_confusion",
  "uncategorized",
] as const;

export type BehaviorCase = (typeof CASES)[number];

export interface InstancePayload {
  id: string;
  modality: "image" | "text";
  dims: number[];
  label: unknown;
  prediction: unknown;
  task: string;
  correct: boolean;
  iou: number;
  gtc: number;
  sc: number;
  case: BehaviorCase;
  flags: string[];
  gt_rle: number[];
  saliency_rle: number[];
  tokens: string[] | null;
  has_image: boolean;
}

export interface InstancesResponse {
  total: number;
  offset: number;
  limit: number | null;
  items: InstancePayload[];
}

export interface HistogramPayload {
  bin_edges: number[];
  counts: number[];
}

export interface SummaryResponse {
  instances: number;
  cases: Record<string, number>;
  histograms: Record<Metric, HistogramPayload>;
}

export interface StackInfo {
  image_id: string;
  classes: number;
  dims: number[];
  rule: string;
}

export interface ProbeResultRow {
  rank: number;
  class_name: string;
  score: number;
  features_rle: number[];
}

export interface ProbeResponse {
  image_id: string;
  metric: Metric;
  results: ProbeResultRow[];
}
