"""HTTP API over a scored corpus and optional probe stacks.

All endpoints are pure views of the immutable startup snapshot: the same
request always returns the same bytes, and every listing equals the
corresponding in-process :func:`salign.corpus.filter_sort` call.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import FileResponse
from pydantic import BaseModel

from . import rle
from .config import AppConfig
from .corpus import (
    Corpus,
    InstanceFilter,
    ScoredInstance,
    SortSpec,
    case_summary,
    filter_sort,
    histogram,
)
from .coverage import FeatureSet
from .errors import UniverseMismatchError
from .probe import ProbeQuery, SaliencyStack, probe
from .taxonomy import BehaviorCase

METRICS = ("iou", "gtc", "sc")


class ProbeRequest(BaseModel):
    image_id: str
    annotation: list[int]
    metric: str = "iou"
    k: int = 3


def instance_payload(si: ScoredInstance, gt: FeatureSet) -> dict:
    """Wire form of one scored instance; scores carry six decimals."""
    record = si.record
    return {
        "id": record.id,
        "modality": record.modality,
        "dims": list(record.dims),
        "label": record.label,
        "prediction": record.prediction,
        "task": record.task,
        "correct": si.correct,
        "iou": round(si.scores.iou, 6),
        "gtc": round(si.scores.gtc, 6),
        "sc": round(si.scores.sc, 6),
        "case": si.case.value,
        "flags": list(si.flags),
        "gt_rle": rle.encode_runs(gt.members),
        "saliency_rle": rle.encode_runs(si.saliency_set.members),
        "tokens": list(record.tokens) if record.tokens is not None else None,
        "has_image": record.image_ref is not None,
    }


def summary_payload(scored: list[ScoredInstance]) -> dict:
    cases = case_summary(scored)
    histograms = {}
    for metric in METRICS:
        if scored:
            h = histogram(scored, metric)
            histograms[metric] = {"bin_edges": list(h.bin_edges), "counts": list(h.counts)}
        else:
            histograms[metric] = {"bin_edges": [], "counts": []}
    return {
        "instances": len(scored),
        "cases": {case.value: count for case, count in cases.items()},
        "histograms": histograms,
    }


def create_app(
    corpus: Corpus,
    scored: list[ScoredInstance],
    config: AppConfig,
    stacks: dict[str, SaliencyStack] | None = None,
    static_dir: Path | None = None,
) -> FastAPI:
    """Build the API over an immutable corpus snapshot.

    ``static_dir``, when given, is mounted at ``/`` to serve the explorer
    frontend.
    """
    stacks = stacks or {}
    app = FastAPI(title="salign", version="0.1.0")
    by_id = {si.record.id: si for si in scored}
    gt_by_id = {inst.record.id: inst.gt for inst in corpus.instances}

    def parse_filters(
        case: str | None,
        label: str | None,
        prediction: str | None,
        correct: str | None,
        metric: str | None,
        min_score: float | None,
        max_score: float | None,
    ) -> InstanceFilter:
        parsed_case = None
        if case is not None:
            try:
                parsed_case = BehaviorCase(case)
            except ValueError:
                raise HTTPException(400, f"unknown case {case!r}")
        parsed_correct = None
        if correct is not None:
            if correct not in ("true", "false"):
                raise HTTPException(400, "correct must be 'true' or 'false'")
            parsed_correct = correct == "true"
        if metric is not None and metric not in METRICS:
            raise HTTPException(400, f"unknown metric {metric!r}")
        return InstanceFilter(
            case=parsed_case,
            label=label,
            prediction=prediction,
            correct=parsed_correct,
            metric=metric,
            min_score=min_score,
            max_score=max_score,
        )

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "instances": len(scored)}

    @app.get("/api/instances")
    def instances(
        case: str | None = None,
        label: str | None = None,
        prediction: str | None = None,
        correct: str | None = None,
        metric: str | None = None,
        min: float | None = Query(default=None),
        max: float | None = Query(default=None),
        sort: str | None = None,
        dir: str = "asc",
        offset: int = Query(default=0, ge=0),
        limit: int | None = Query(default=None, ge=1),
    ) -> dict:
        flt = parse_filters(case, label, prediction, correct, metric, min, max)
        try:
            spec = SortSpec(sort, dir) if sort is not None else None
            rows = filter_sort(scored, flt, spec)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        total = len(rows)
        end = offset + limit if limit is not None else None
        page = rows[offset:end]
        return {
            "total": total,
            "offset": offset,
            "limit": limit,
            "items": [instance_payload(si, gt_by_id[si.record.id]) for si in page],
        }

    @app.get("/api/instances/{instance_id}")
    def instance_detail(instance_id: str) -> dict:
        si = by_id.get(instance_id)
        if si is None:
            raise HTTPException(404, f"unknown instance {instance_id!r}")
        return instance_payload(si, gt_by_id[instance_id])

    @app.get("/api/instances/{instance_id}/image")
    def instance_image(instance_id: str) -> FileResponse:
        si = by_id.get(instance_id)
        if si is None:
            raise HTTPException(404, f"unknown instance {instance_id!r}")
        if si.record.image_ref is None:
            raise HTTPException(404, f"instance {instance_id!r} has no image")
        return FileResponse(corpus.data_root / si.record.image_ref)

    @app.get("/api/summary")
    def summary() -> dict:
        return summary_payload(scored)

    @app.get("/api/stacks")
    def list_stacks() -> list[dict]:
        return [
            {
                "image_id": stack.image_id,
                "classes": len(stack.class_names),
                "dims": list(stack.dims),
                "rule": str(stack.rule),
            }
            for stack in stacks.values()
        ]

    @app.post("/api/probe")
    def probe_endpoint(request: ProbeRequest) -> dict:
        stack = stacks.get(request.image_id)
        if stack is None:
            raise HTTPException(404, f"no stack for image {request.image_id!r}")
        try:
            annotation = FeatureSet(
                stack.universe_size, rle.decode_runs(request.annotation)
            )
            query = ProbeQuery(request.image_id, annotation, request.metric, request.k)
            result = probe(stack, query)
        except (ValueError, UniverseMismatchError) as exc:
            raise HTTPException(400, str(exc))
        return {
            "image_id": result.image_id,
            "metric": result.metric,
            "results": [
                {
                    "rank": rank,
                    "class_name": entry.class_name,
                    "score": round(entry.score, 6),
                    "features_rle": rle.encode_runs(entry.features.members),
                }
                for rank, entry in enumerate(result.entries, start=1)
            ],
        }

    @app.get("/api/config")
    def config_view() -> dict:
        return config.as_dict()

    if static_dir is not None and static_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
