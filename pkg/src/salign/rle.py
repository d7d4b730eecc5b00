"""Run-length encoding of sorted index sets.

The HTTP API ships feature sets as flat ``[start0, len0, start1, len1,
...]`` lists covering maximal runs of consecutive indices, which keeps
mask-like payloads compact.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def encode_runs(indices) -> list[int]:
    """Encode sorted unique indices as ``[start, length, ...]`` pairs."""
    arr = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices)
    arr = np.unique(arr.astype(np.int64))
    if arr.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(arr) != 1) + 1
    runs: list[int] = []
    for chunk in np.split(arr, breaks):
        runs.append(int(chunk[0]))
        runs.append(int(chunk.size))
    return runs


def decode_runs(runs: Sequence[int]) -> np.ndarray:
    """Decode ``[start, length, ...]`` pairs into a sorted int64 index array."""
    if len(runs) % 2 != 0:
        raise ValueError("run-length list must hold (start, length) pairs")
    out: list[np.ndarray] = []
    prev_end = None
    for i in range(0, len(runs), 2):
        start, length = int(runs[i]), int(runs[i + 1])
        if length < 1:
            raise ValueError(f"run length must be >= 1, got {length}")
        if start < 0:
            raise ValueError(f"run start must be >= 0, got {start}")
        if prev_end is not None and start < prev_end:
            raise ValueError("runs must be sorted and non-overlapping")
        out.append(np.arange(start, start + length, dtype=np.int64))
        prev_end = start + length
    if not out:
        return np.array([], dtype=np.int64)
    return np.concatenate(out)
