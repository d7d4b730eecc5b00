// Run-length index lists: flat [start0, len0, start1, len1, ...] pairs
// over the flattened feature universe, matching the API's encoding.

export function encodeRuns(indices: Iterable<number>): number[] {
  const sorted = Array.from(new Set(indices)).sort((a, b) => a - b);
  const runs: number[] = [];
  let start = -1;
  let length = 0;
  for (const index of sorted) {
    if (length > 0 && index === start + length) {
      length += 1;
    } else {
      if (length > 0) runs.push(start, length);
      start = index;
      length = 1;
    }
  }
  if (length > 0) runs.push(start, length);
  return runs;
}

export function decodeRuns(runs: number[]): number[] {
  if (runs.length % 2 !== 0) {
    throw new Error("run-length list must hold (start, length) pairs");
  }
  const out: number[] = [];
  let prevEnd = -1;
  for (let i = 0; i < runs.length; i += 2) {
    const start = runs[i];
    const length = runs[i + 1];
    if (length < 1) throw new Error(`run length must be >= 1, got ${length}`);
    if (start < 0) throw new Error(`run start must be >= 0, got ${start}`);
    if (start < prevEnd) throw new Error("runs must be sorted and non-overlapping");
    for (let k = 0; k < length; k += 1) out.push(start + k);
    prevEnd = start + length;
  }
  return out;
}
