"""Coverage metrics between human-annotated and model-salient feature sets.

Both inputs are discrete index sets over the same flattened feature
universe (pixels for images, tokens for text). Three scores compare an
annotation set G with a saliency set S:

* ``iou``  |G ∩ S| / |G ∪ S| -- the Jaccard index; similarity of the sets.
* ``gtc``  |G ∩ S| / |G|     -- recall-like; how much of G the model uses.
* ``sc``   |G ∩ S| / |S|     -- precision-like; how much of S a human marked.

Counts are exact integers; scores are formed as double-precision ratios at
the last step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import EmptyGroundTruthError, UniverseMismatchError


class FeatureSet:
    """Immutable, sorted, duplicate-free set of feature indices.

    ``universe_size`` is the total number of features in the instance.
    Member indices are normalized to a sorted unique int64 array and
    bounds-checked against ``[0, universe_size)``. Instances are safe to
    share between threads.
    """

    __slots__ = ("universe_size", "members")

    def __init__(self, universe_size: int, members: Iterable[int] = ()) -> None:
        universe_size = int(universe_size)
        if universe_size < 0:
            raise ValueError(f"universe_size must be >= 0, got {universe_size}")
        if isinstance(members, np.ndarray):
            arr = members.astype(np.int64, copy=True)
        else:
            arr = np.fromiter(members, dtype=np.int64)
        arr = np.unique(arr)
        if arr.size:
            if int(arr[0]) < 0 or int(arr[-1]) >= universe_size:
                raise ValueError(
                    f"feature index out of range [0, {universe_size}): "
                    f"min={int(arr[0])}, max={int(arr[-1])}"
                )
        arr.setflags(write=False)
        object.__setattr__(self, "universe_size", universe_size)
        object.__setattr__(self, "members", arr)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("FeatureSet is immutable")

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "FeatureSet":
        """Build a set from a binary mask (any shape, row-major flattening)."""
        flat = np.asarray(mask).reshape(-1)
        return cls(flat.size, np.flatnonzero(flat))

    def to_mask(self, dims: tuple[int, ...] | None = None) -> np.ndarray:
        """Render the set as a uint8 mask, optionally reshaped to ``dims``."""
        mask = np.zeros(self.universe_size, dtype=np.uint8)
        mask[self.members] = 1
        if dims is not None:
            if int(np.prod(dims)) != self.universe_size:
                raise ValueError(f"dims {dims} do not flatten to {self.universe_size}")
            mask = mask.reshape(dims)
        return mask

    def __len__(self) -> int:
        return int(self.members.size)

    def __iter__(self) -> Iterator[int]:
        return iter(int(i) for i in self.members)

    def __contains__(self, index: int) -> bool:
        pos = int(np.searchsorted(self.members, index))
        return pos < self.members.size and int(self.members[pos]) == int(index)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeatureSet):
            return NotImplemented
        return self.universe_size == other.universe_size and np.array_equal(
            self.members, other.members
        )

    def __hash__(self) -> int:
        return hash((self.universe_size, self.members.tobytes()))

    def __repr__(self) -> str:
        preview = ", ".join(str(int(i)) for i in self.members[:8])
        if self.members.size > 8:
            preview += ", ..."
        return f"FeatureSet(universe_size={self.universe_size}, members=[{preview}])"


@dataclass(frozen=True)
class CoverageScores:
    """The three coverage scores plus the raw set counts behind them.

    ``empty_saliency`` marks results produced from an empty S (all scores
    zero by convention rather than an error, so corpora with weak
    thresholds still aggregate).
    """

    iou: float
    gtc: float
    sc: float
    intersection_size: int
    union_size: int
    empty_saliency: bool = False


def _require_same_universe(a: FeatureSet, b: FeatureSet) -> None:
    if a.universe_size != b.universe_size:
        raise UniverseMismatchError(
            f"universe sizes differ: {a.universe_size} != {b.universe_size}"
        )


def intersect(a: FeatureSet, b: FeatureSet) -> FeatureSet:
    """Indices present in both sets."""
    _require_same_universe(a, b)
    common = np.intersect1d(a.members, b.members, assume_unique=True)
    return FeatureSet(a.universe_size, common)


def union(a: FeatureSet, b: FeatureSet) -> FeatureSet:
    """Indices present in either set."""
    _require_same_universe(a, b)
    merged = np.union1d(a.members, b.members)
    return FeatureSet(a.universe_size, merged)


def compute_coverage(g: FeatureSet, s: FeatureSet) -> CoverageScores:
    """Score saliency set ``s`` against annotation set ``g``.

    ``g`` must be non-empty (an annotation with no features is a data
    defect, not a model behavior). An empty ``s`` yields all-zero scores
    with ``empty_saliency`` set.
    """
    _require_same_universe(g, s)
    g_size = len(g)
    if g_size == 0:
        raise EmptyGroundTruthError("ground-truth feature set is empty")
    s_size = len(s)
    if s_size == 0:
        return CoverageScores(
            iou=0.0,
            gtc=0.0,
            sc=0.0,
            intersection_size=0,
            union_size=g_size,
            empty_saliency=True,
        )
    inter = int(np.intersect1d(g.members, s.members, assume_unique=True).size)
    uni = g_size + s_size - inter
    return CoverageScores(
        iou=inter / uni,
        gtc=inter / g_size,
        sc=inter / s_size,
        intersection_size=inter,
        union_size=uni,
    )
