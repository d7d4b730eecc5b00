// Thin fetch client. Every displayed number originates from these calls.

import type {
  InstancesResponse,
  Metric,
  ProbeResponse,
  StackInfo,
  SummaryResponse,
} from "./types.js";
import type { ExplorerViewState } from "./state.js";
import { instancesQuery } from "./state.js";

async function getJson<T>(url: string): Promise<T> {
  const resp = await fetch(url);
  if (!resp.ok) {
    const body = await resp.text();
    throw new Error(`GET ${url} -> ${resp.status}: ${body}`);
  }
  return (await resp.json()) as T;
}

export function instancesUrl(state: ExplorerViewState, base = ""): string {
  return `${base}/api/instances?${instancesQuery(state).toString()}`;
}

export async function fetchInstances(
  state: ExplorerViewState,
  base = "",
): Promise<InstancesResponse> {
  return getJson<InstancesResponse>(instancesUrl(state, base));
}

export async function fetchSummary(base = ""): Promise<SummaryResponse> {
  return getJson<SummaryResponse>(`${base}/api/summary`);
}

export async function fetchStacks(base = ""): Promise<StackInfo[]> {
  return getJson<StackInfo[]>(`${base}/api/stacks`);
}

export async function postProbe(
  imageId: string,
  annotationRuns: number[],
  metric: Metric,
  k: number,
  base = "",
): Promise<ProbeResponse> {
  const resp = await fetch(`${base}/api/probe`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({
      image_id: imageId,
      annotation: annotationRuns,
      metric,
      k,
    }),
  });
  if (!resp.ok) {
    const body = await resp.text();
    throw new Error(`POST /api/probe -> ${resp.status}: ${body}`);
  }
  return (await resp.json()) as ProbeResponse;
}
