"""Rank classes by how well their saliency aligns with a user annotation.

A stack holds one saliency field per class for a single input. Probing
takes a user-drawn annotation as the ground truth, discretizes every
class's field with the stack's rule, scores each class with the chosen
metric, and returns the top-k classes. Discretized sets are cached per
rule so interactive queries stay fast.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .coverage import FeatureSet, compute_coverage
from .discretize import SaliencyField, ThresholdRule, discretize_score_based
from .errors import ManifestError, UniverseMismatchError

METRICS = ("iou", "gtc", "sc")

#: Absolute values thresholded one standard deviation above the mean.
DEFAULT_STACK_RULE = ThresholdRule.mean_plus_sigma(1.0, take_absolute=True)


@dataclass
class SaliencyStack:
    """Per-class saliency fields for one input image."""

    image_id: str
    class_names: tuple[str, ...]
    fields: tuple[SaliencyField, ...]
    rule: ThresholdRule = DEFAULT_STACK_RULE
    _cache: dict[ThresholdRule, tuple[FeatureSet, ...]] = field(
        default_factory=dict, repr=False, compare=False
    )
    _cache_lock: threading.Lock = field(
        default_factory=threading.Lock, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if len(self.class_names) < 1:
            raise ValueError("stack needs at least one class")
        if len(set(self.class_names)) != len(self.class_names):
            raise ValueError("class names must be unique")
        if len(self.fields) != len(self.class_names):
            raise ValueError(
                f"{len(self.class_names)} class names but {len(self.fields)} fields"
            )
        dims = {f.dims for f in self.fields}
        if len(dims) != 1:
            raise ValueError(f"fields disagree on dims: {sorted(dims)}")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.fields[0].dims

    @property
    def universe_size(self) -> int:
        return self.fields[0].universe_size

    def discretized(self, rule: ThresholdRule | None = None) -> tuple[FeatureSet, ...]:
        """Per-class feature sets under ``rule`` (stack default when None)."""
        rule = rule if rule is not None else self.rule
        cached = self._cache.get(rule)
        if cached is not None:
            return cached
        with self._cache_lock:
            cached = self._cache.get(rule)
            if cached is None:
                cached = tuple(discretize_score_based(f, rule) for f in self.fields)
                self._cache[rule] = cached
        return cached


@dataclass(frozen=True)
class ProbeQuery:
    """A user annotation to rank classes against."""

    image_id: str
    annotation: FeatureSet
    metric: str = "iou"
    k: int = 3

    def __post_init__(self) -> None:
        if len(self.annotation) == 0:
            raise ValueError("annotation must be non-empty")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass(frozen=True)
class ProbeEntry:
    class_name: str
    score: float
    features: FeatureSet


@dataclass(frozen=True)
class ProbeResult:
    """Classes ranked by score (non-increasing; ties by class index)."""

    image_id: str
    metric: str
    entries: tuple[ProbeEntry, ...]


def probe(stack: SaliencyStack, query: ProbeQuery) -> ProbeResult:
    """Score every class against the annotation and keep the top k."""
    if query.image_id != stack.image_id:
        raise KeyError(f"unknown image {query.image_id!r} (stack is {stack.image_id!r})")
    if query.annotation.universe_size != stack.universe_size:
        raise UniverseMismatchError(
            f"annotation universe {query.annotation.universe_size} "
            f"!= stack universe {stack.universe_size}"
        )
    sets = stack.discretized()
    scores = [
        getattr(compute_coverage(query.annotation, class_set), query.metric)
        for class_set in sets
    ]
    order = sorted(range(len(sets)), key=lambda c: (-scores[c], c))
    top = order[: min(query.k, len(sets))]
    entries = tuple(
        ProbeEntry(stack.class_names[c], scores[c], sets[c]) for c in top
    )
    return ProbeResult(query.image_id, query.metric, entries)


def load_stack(stack_manifest_path: str | os.PathLike) -> SaliencyStack:
    """Load a stack manifest.

    JSON object with ``image_id``, ``class_names``, and either ``packed``
    (one CxHxW f32 SI-TENSOR path) or ``files`` (ordered per-class tensor
    paths). Optional ``rule``/``take_absolute`` override the default
    discretization rule.
    """
    path = Path(stack_manifest_path)
    if not path.is_file():
        raise ManifestError(f"stack manifest not found: {path}")
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ManifestError(f"{path}: stack manifest must be a JSON object")
    for key in ("image_id", "class_names"):
        if key not in obj:
            raise ManifestError(f"{path}: missing field {key!r}")
    names = tuple(str(n) for n in obj["class_names"])
    has_packed = "packed" in obj
    has_files = "files" in obj
    if has_packed == has_files:
        raise ManifestError(f"{path}: need exactly one of 'packed' or 'files'")

    from . import tensorio

    root = path.parent
    if has_packed:
        tensor = tensorio.read_tensor(root / obj["packed"])
        if tensor.ndim != 3:
            raise ManifestError(f"{path}: packed stack must be CxHxW, got {tensor.shape}")
        if tensor.shape[0] != len(names):
            raise ManifestError(
                f"{path}: {len(names)} class names but packed tensor holds "
                f"{tensor.shape[0]} fields"
            )
        dims = tensor.shape[1:]
        fields = tuple(SaliencyField(dims, tensor[c]) for c in range(tensor.shape[0]))
    else:
        paths = [root / p for p in obj["files"]]
        if len(paths) != len(names):
            raise ManifestError(
                f"{path}: {len(names)} class names but {len(paths)} field files"
            )
        tensors = [tensorio.read_tensor(p) for p in paths]
        fields = tuple(SaliencyField(t.shape, t) for t in tensors)

    rule = DEFAULT_STACK_RULE
    if "rule" in obj:
        rule = ThresholdRule.parse(str(obj["rule"]), bool(obj.get("take_absolute", False)))
    return SaliencyStack(str(obj["image_id"]), names, fields, rule)
