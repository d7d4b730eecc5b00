// Pure view-models for the probe results panel. Row text matches the
// CLI's output format so the two surfaces are directly comparable.

import type { ProbeResponse } from "./types.js";

export interface ProbeRowModel {
  rank: number;
  className: string;
  scoreText: string;
  line: string;
  featuresRuns: number[];
}

export function probeRows(response: ProbeResponse): ProbeRowModel[] {
  return response.results.map((row) => {
    const scoreText = row.score.toFixed(6);
    return {
      rank: row.rank,
      className: row.class_name,
      scoreText,
      line: `${row.rank} ${row.class_name} ${scoreText}`,
      featuresRuns: row.features_rle,
    };
  });
}
