"""Corpus ingestion, batch scoring, views, and report export.

A corpus is described by a JSON Lines manifest whose first line is a
version header ``{"si_manifest_version": 1}``. Every following line is one
instance record; relative payload paths resolve against ``data_root``.
Ground truth arrives as a u8 mask tensor or an ASCII index list; saliency
arrives as an f32 field tensor or, when already discrete, an index list.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .coverage import CoverageScores, FeatureSet, compute_coverage
from .discretize import SaliencyField, ThresholdRule, discretize_score_based
from .errors import ManifestError
from .taxonomy import (
    DEFAULT_THRESHOLDS,
    BehaviorCase,
    CaseThresholds,
    Outcome,
    classify_case,
    is_correct,
)

MANIFEST_VERSION = 1
MODALITIES = ("image", "text")
METRICS = ("iou", "gtc", "sc")

CSV_HEADER = ("id", "label", "prediction", "correct", "iou", "gtc", "sc", "case", "flags")


@dataclass(frozen=True)
class InstanceRecord:
    """One manifest entry: identity, outcome, and payload locators."""

    id: str
    modality: str
    dims: tuple[int, ...]
    label: object
    prediction: object
    task: str
    gt_ref: str
    saliency_ref: str
    tokens: tuple[str, ...] | None = None
    image_ref: str | None = None

    @property
    def universe_size(self) -> int:
        return int(np.prod(self.dims))


@dataclass(frozen=True)
class LoadedInstance:
    """A record plus its validated payloads.

    Exactly one of ``saliency_field`` (continuous scores, discretized at
    scoring time) and ``saliency_set`` (pre-discretized) is set.
    """

    record: InstanceRecord
    gt: FeatureSet
    saliency_field: SaliencyField | None
    saliency_set: FeatureSet | None


@dataclass(frozen=True)
class Diagnostic:
    """A per-record problem surfaced during load or scoring."""

    instance_id: str | None
    line: int
    message: str

    def __str__(self) -> str:
        ident = self.instance_id if self.instance_id is not None else f"line {self.line}"
        return f"{ident}: {self.message}"


@dataclass
class Corpus:
    """Validated in-memory corpus; immutable after load by convention."""

    manifest_path: Path
    data_root: Path
    instances: list[LoadedInstance]
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.instances)

    def labels(self) -> list[str]:
        """Distinct label/prediction vocabulary, as strings, sorted."""
        seen = {str(inst.record.label) for inst in self.instances}
        seen.update(str(inst.record.prediction) for inst in self.instances)
        return sorted(seen)


def _parse_record(obj: dict) -> InstanceRecord:
    for key in ("id", "modality", "dims", "label", "prediction", "task", "gt_ref", "saliency_ref"):
        if key not in obj:
            raise ManifestError(f"missing field {key!r}")
    if obj["modality"] not in MODALITIES:
        raise ManifestError(f"unknown modality {obj['modality']!r}")
    dims = tuple(int(d) for d in obj["dims"])
    if not dims or any(d < 1 for d in dims):
        raise ManifestError(f"bad dims {obj['dims']!r}")
    tokens = obj.get("tokens")
    if tokens is not None:
        tokens = tuple(str(t) for t in tokens)
        if len(tokens) != int(np.prod(dims)):
            raise ManifestError(f"{len(tokens)} tokens for dims {dims}")
    return InstanceRecord(
        id=str(obj["id"]),
        modality=obj["modality"],
        dims=dims,
        label=obj["label"],
        prediction=obj["prediction"],
        task=str(obj["task"]),
        gt_ref=str(obj["gt_ref"]),
        saliency_ref=str(obj["saliency_ref"]),
        tokens=tokens,
        image_ref=str(obj["image_ref"]) if obj.get("image_ref") is not None else None,
    )


def _load_feature_payload(path: Path, record: InstanceRecord, role: str):
    """Load a gt/saliency payload, returning a FeatureSet or SaliencyField."""
    from . import tensorio

    if not path.is_file():
        raise ManifestError(f"{role} payload not found: {path}")
    if tensorio.sniff_kind(path) == "index_list":
        indices = tensorio.read_index_list(path)
        if indices.size and (indices[0] < 0 or indices[-1] >= record.universe_size):
            raise ManifestError(
                f"{role} index out of range [0, {record.universe_size}) in {path}"
            )
        return FeatureSet(record.universe_size, indices)
    tensor = tensorio.read_tensor(path)
    if tensor.shape != record.dims:
        raise ManifestError(
            f"dim mismatch for {role}: payload {tensor.shape} vs record {record.dims}"
        )
    if role == "gt":
        if tensor.dtype != np.uint8:
            raise ManifestError(f"gt mask must be u8, got {tensor.dtype} in {path}")
        return FeatureSet.from_mask(tensor)
    if tensor.dtype != np.float32:
        raise ManifestError(f"saliency field must be f32, got {tensor.dtype} in {path}")
    return SaliencyField(record.dims, tensor)


def load_corpus(
    manifest_path: str | os.PathLike,
    data_root: str | os.PathLike | None = None,
    strict: bool = False,
) -> Corpus:
    """Load and validate a corpus manifest.

    With ``strict`` the first problem aborts the load; otherwise bad
    records are skipped and reported via ``Corpus.diagnostics``.
    """
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise ManifestError(f"manifest not found: {manifest_path}")
    root = Path(data_root) if data_root is not None else manifest_path.parent

    lines = manifest_path.read_text(encoding="utf-8").splitlines()
    numbered = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip()]
    if not numbered:
        raise ManifestError(f"{manifest_path}: empty manifest")

    header_line, header_text = numbered[0]
    try:
        header = json.loads(header_text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{manifest_path}:{header_line}: bad header: {exc}") from exc
    if not isinstance(header, dict) or header.get("si_manifest_version") != MANIFEST_VERSION:
        raise ManifestError(
            f"{manifest_path}:{header_line}: first line must be "
            f'{{"si_manifest_version": {MANIFEST_VERSION}}}'
        )

    instances: list[LoadedInstance] = []
    diagnostics: list[Diagnostic] = []
    seen_ids: set[str] = set()

    def problem(instance_id: str | None, line: int, message: str) -> None:
        if strict:
            raise ManifestError(f"{manifest_path}:{line}: {message}")
        diagnostics.append(Diagnostic(instance_id, line, message))

    for line, text in numbered[1:]:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            problem(None, line, f"not valid JSON: {exc}")
            continue
        try:
            record = _parse_record(obj)
        except (ManifestError, TypeError, ValueError) as exc:
            problem(obj.get("id") if isinstance(obj, dict) else None, line, str(exc))
            continue
        if record.id in seen_ids:
            problem(record.id, line, f"duplicate id {record.id!r}")
            continue
        try:
            gt = _load_feature_payload(root / record.gt_ref, record, "gt")
            sal = _load_feature_payload(root / record.saliency_ref, record, "saliency")
        except (ManifestError, ValueError) as exc:
            problem(record.id, line, str(exc))
            continue
        if not isinstance(gt, FeatureSet):
            problem(record.id, line, "gt payload must be a mask or index list, not a field")
            continue
        if len(gt) == 0:
            problem(record.id, line, "empty ground truth annotation")
            continue
        seen_ids.add(record.id)
        if isinstance(sal, FeatureSet):
            instances.append(LoadedInstance(record, gt, None, sal))
        else:
            instances.append(LoadedInstance(record, gt, sal, None))

    return Corpus(manifest_path, root, instances, diagnostics)


@dataclass(frozen=True)
class ScoredInstance:
    """An instance with its scores, correctness, and assigned case."""

    record: InstanceRecord
    scores: CoverageScores
    correct: bool
    case: BehaviorCase
    empty_saliency: bool
    rule: ThresholdRule
    saliency_set: FeatureSet
    pre_discretized: bool = False

    @property
    def flags(self) -> tuple[str, ...]:
        out = []
        if self.empty_saliency:
            out.append("empty_saliency")
        if self.pre_discretized:
            out.append("pre_discretized")
        return tuple(out)


def score_instance(
    instance: LoadedInstance,
    rule: ThresholdRule,
    thresholds: CaseThresholds = DEFAULT_THRESHOLDS,
    delta: float = 0.05,
) -> ScoredInstance:
    """Score and classify one instance."""
    record = instance.record
    if instance.saliency_set is not None:
        s = instance.saliency_set
        applied = rule
        pre_discretized = True
    else:
        applied = rule.resolved(len(instance.gt))
        s = discretize_score_based(instance.saliency_field, applied)
        pre_discretized = False
    scores = compute_coverage(instance.gt, s)
    correct = is_correct(Outcome(record.task, record.label, record.prediction, delta))
    case = classify_case(scores, correct, thresholds)
    return ScoredInstance(
        record=record,
        scores=scores,
        correct=correct,
        case=case,
        empty_saliency=scores.empty_saliency,
        rule=applied,
        saliency_set=s,
        pre_discretized=pre_discretized,
    )


def score_corpus(
    corpus: Corpus,
    rule: ThresholdRule,
    thresholds: CaseThresholds = DEFAULT_THRESHOLDS,
    delta: float = 0.05,
) -> list[ScoredInstance]:
    """Score every instance in manifest order.

    Per-instance failures become ``corpus.diagnostics`` entries instead of
    aborting the batch.
    """
    scored: list[ScoredInstance] = []
    for instance in corpus.instances:
        try:
            scored.append(score_instance(instance, rule, thresholds, delta))
        except (ValueError, ArithmeticError) as exc:
            corpus.diagnostics.append(Diagnostic(instance.record.id, 0, f"scoring failed: {exc}"))
    return scored


@dataclass(frozen=True)
class InstanceFilter:
    """Conjunctive filters over a scored corpus.

    ``label``/``prediction`` match on string form. ``metric`` with
    ``min_score``/``max_score`` keeps instances whose score lies in the
    inclusive range.
    """

    case: BehaviorCase | None = None
    label: str | None = None
    prediction: str | None = None
    correct: bool | None = None
    metric: str | None = None
    min_score: float | None = None
    max_score: float | None = None


@dataclass(frozen=True)
class SortSpec:
    metric: str
    direction: str = "asc"

    def __post_init__(self) -> None:
        if self.metric not in METRICS:
            raise ValueError(f"unknown sort metric {self.metric!r}")
        if self.direction not in ("asc", "desc"):
            raise ValueError(f"unknown sort direction {self.direction!r}")


def _metric_value(si: ScoredInstance, metric: str) -> float:
    return getattr(si.scores, metric)


def filter_sort(
    scored: list[ScoredInstance],
    flt: InstanceFilter | None = None,
    sort: SortSpec | None = None,
) -> list[ScoredInstance]:
    """Filter conjunctively, then stable-sort (ties keep manifest order)."""
    out = list(scored)
    if flt is not None:
        if flt.case is not None:
            case = BehaviorCase(flt.case)
            out = [si for si in out if si.case is case]
        if flt.label is not None:
            known = {str(si.record.label) for si in scored}
            if flt.label not in known:
                raise ValueError(f"unknown label {flt.label!r}")
            out = [si for si in out if str(si.record.label) == flt.label]
        if flt.prediction is not None:
            known = {str(si.record.prediction) for si in scored}
            if flt.prediction not in known:
                raise ValueError(f"unknown prediction {flt.prediction!r}")
            out = [si for si in out if str(si.record.prediction) == flt.prediction]
        if flt.correct is not None:
            out = [si for si in out if si.correct == flt.correct]
        if flt.metric is not None:
            if flt.metric not in METRICS:
                raise ValueError(f"unknown metric {flt.metric!r}")
            lo = flt.min_score if flt.min_score is not None else 0.0
            hi = flt.max_score if flt.max_score is not None else 1.0
            out = [si for si in out if lo <= _metric_value(si, flt.metric) <= hi]
    if sort is not None:
        out.sort(
            key=lambda si: _metric_value(si, sort.metric),
            reverse=sort.direction == "desc",
        )
    return out


@dataclass(frozen=True)
class ScoreHistogram:
    """Counts per 0.1-wide score bin; the final bin is right-closed."""

    metric: str
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]


#: Edges 0.0, 0.1, ..., 1.0 built from exact tenths so a score of k/10
#: lands in the bin that starts at it.
BIN_EDGES = tuple(i / 10 for i in range(11))


def histogram(scored: list[ScoredInstance], metric: str) -> ScoreHistogram:
    """Ten-bin distribution of one metric over the scored corpus."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    if not scored:
        raise ValueError("cannot histogram an empty corpus")
    values = np.array([_metric_value(si, metric) for si in scored], dtype=np.float64)
    counts, _ = np.histogram(values, bins=np.array(BIN_EDGES))
    return ScoreHistogram(metric, BIN_EDGES, tuple(int(c) for c in counts))


def case_summary(scored: list[ScoredInstance]) -> dict[BehaviorCase, int]:
    """Instance count per behavior case; every case is present, sum is N."""
    counts = {case: 0 for case in BehaviorCase}
    for si in scored:
        counts[si.case] += 1
    return counts


def _row_values(si: ScoredInstance) -> dict[str, object]:
    return {
        "id": si.record.id,
        "label": si.record.label,
        "prediction": si.record.prediction,
        "correct": si.correct,
        "iou": si.scores.iou,
        "gtc": si.scores.gtc,
        "sc": si.scores.sc,
        "case": si.case.value,
        "flags": list(si.flags),
    }


def export_report(
    scored: list[ScoredInstance],
    path: str | os.PathLike,
    fmt: str = "csv",
) -> Path:
    """Write one row per instance; scores carry six decimal places.

    CSV uses RFC 4180 quoting with a fixed header; JSONL uses fixed keys.
    Output is byte-identical across runs for the same inputs.
    """
    path = Path(path)
    if fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for si in scored:
                row = _row_values(si)
                writer.writerow(
                    [
                        row["id"],
                        row["label"],
                        row["prediction"],
                        "true" if row["correct"] else "false",
                        f"{row['iou']:.6f}",
                        f"{row['gtc']:.6f}",
                        f"{row['sc']:.6f}",
                        row["case"],
                        ";".join(row["flags"]),
                    ]
                )
    elif fmt == "jsonl":
        with open(path, "w", encoding="utf-8") as fh:
            for si in scored:
                row = _row_values(si)
                for metric in METRICS:
                    row[metric] = round(row[metric], 6)
                fh.write(json.dumps(row) + "\n")
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return path
