"""Seeded synthetic corpora and stacks for demos, tests, and benchmarks.

Everything here is deterministic for a fixed seed, so generated fixtures
support byte-identical pipeline runs.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from . import tensorio

CLASS_VOCAB = ("cab", "moped", "snowplow", "streetcar", "tractor", "whippet")


def _random_box(rng: np.random.Generator, dims: tuple[int, int]) -> np.ndarray:
    h, w = dims
    bh = int(rng.integers(h // 4, h // 2 + 1))
    bw = int(rng.integers(w // 4, w // 2 + 1))
    r0 = int(rng.integers(0, h - bh + 1))
    c0 = int(rng.integers(0, w - bw + 1))
    mask = np.zeros(dims, dtype=np.uint8)
    mask[r0 : r0 + bh, c0 : c0 + bw] = 1
    return mask


def build_corpus(
    root: str | os.PathLike,
    n: int = 256,
    dims: tuple[int, int] = (32, 32),
    seed: int = 0,
) -> Path:
    """Write a classification corpus of box annotations and noisy saliency.

    Each instance gets a rectangular ground-truth mask and a Gaussian
    noise field boosted either inside the box (aligned behavior), on a
    shifted box (context behavior), or nowhere (background behavior).
    Roughly a quarter of predictions are wrong. Returns the manifest path.
    """
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    lines = [json.dumps({"si_manifest_version": 1})]

    for i in range(n):
        iid = f"inst{i:04d}"
        mask = _random_box(rng, dims)
        field = rng.normal(0.0, 1.0, size=dims).astype(np.float32)
        style = int(rng.integers(0, 3))
        if style == 0:
            field[mask == 1] += 3.0
        elif style == 1:
            shifted = np.roll(mask, (dims[0] // 3, dims[1] // 3), axis=(0, 1))
            field[shifted == 1] += 3.0
        label = CLASS_VOCAB[int(rng.integers(0, len(CLASS_VOCAB)))]
        if rng.random() < 0.25:
            others = [c for c in CLASS_VOCAB if c != label]
            prediction = others[int(rng.integers(0, len(others)))]
        else:
            prediction = label
        gt_ref = f"gt_{iid}.sit"
        sal_ref = f"sal_{iid}.sit"
        tensorio.write_tensor(root / gt_ref, mask)
        tensorio.write_tensor(root / sal_ref, field.astype(np.float32))
        lines.append(
            json.dumps(
                {
                    "id": iid,
                    "modality": "image",
                    "dims": list(dims),
                    "label": label,
                    "prediction": prediction,
                    "task": "classification",
                    "gt_ref": gt_ref,
                    "saliency_ref": sal_ref,
                }
            )
        )

    manifest = root / "manifest.jsonl"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


#: (name, correct, gt indices, saliency indices) rows over a 32x32 grid
#: realizing each behavior case: equal sets, a strict subset, a disjoint
#: set, and a strict superset, each for a correct and an incorrect
#: prediction.
CASE_PATTERNS = (
    ("human_aligned", True, range(0, 10), range(0, 10)),
    ("sufficient_subset", True, range(0, 10), range(0, 3)),
    ("sufficient_context", True, range(0, 10), range(500, 510)),
    ("context_dependent", True, range(0, 10), range(0, 40)),
    ("confuser", False, range(0, 10), range(0, 10)),
    ("insufficient_subset", False, range(0, 10), range(0, 3)),
    ("distractor", False, range(0, 10), range(500, 510)),
    ("context_confusion", False, range(0, 10), range(0, 40)),
)


def build_case_corpus(root: str | os.PathLike, dims: tuple[int, int] = (32, 32)) -> Path:
    """Write an eight-instance corpus landing one instance in each case.

    Ground truth is stored as a u8 mask, saliency as a pre-discretized
    index list, exercising both payload kinds. Returns the manifest path.
    """
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    universe = int(np.prod(dims))
    lines = [json.dumps({"si_manifest_version": 1})]
    for name, correct, gt_idx, sal_idx in CASE_PATTERNS:
        mask = np.zeros(universe, dtype=np.uint8)
        mask[list(gt_idx)] = 1
        gt_ref = f"gt_{name}.sit"
        sal_ref = f"sal_{name}.idx"
        tensorio.write_tensor(root / gt_ref, mask.reshape(dims))
        tensorio.write_index_list(root / sal_ref, sal_idx)
        lines.append(
            json.dumps(
                {
                    "id": name,
                    "modality": "image",
                    "dims": list(dims),
                    "label": "target",
                    "prediction": "target" if correct else "other",
                    "task": "classification",
                    "gt_ref": gt_ref,
                    "saliency_ref": sal_ref,
                }
            )
        )
    manifest = root / "manifest.jsonl"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


def build_stack(
    root: str | os.PathLike,
    image_id: str = "img0",
    class_count: int = 4,
    dims: tuple[int, int] = (16, 16),
    planted_class: int = 2,
    seed: int = 7,
    packed: bool = True,
) -> tuple[Path, np.ndarray]:
    """Write a stack whose ``planted_class`` field is high exactly on a patch.

    The planted class's field is strongly positive on a square patch in
    the upper-left quadrant and mildly negative elsewhere, so the default
    one-sigma rule discretizes it to exactly that patch. Other classes get
    low-amplitude noise. Returns the stack manifest path and the planted
    patch mask.
    """
    if not 0 <= planted_class < class_count:
        raise ValueError(f"planted_class {planted_class} outside 0..{class_count - 1}")
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    h, w = dims
    patch = np.zeros(dims, dtype=np.uint8)
    patch[2 : h // 2, 2 : w // 2] = 1

    stack = rng.normal(0.0, 0.05, size=(class_count, h, w)).astype(np.float32)
    planted = np.full(dims, -0.1, dtype=np.float32)
    planted[patch == 1] = 5.0
    stack[planted_class] = planted

    class_names = [f"class{c}" for c in range(class_count)]
    manifest = root / "stack.json"
    if packed:
        packed_ref = "stack_packed.sit"
        tensorio.write_tensor(root / packed_ref, stack)
        payload = {"image_id": image_id, "class_names": class_names, "packed": packed_ref}
    else:
        refs = []
        for c in range(class_count):
            ref = f"stack_class{c}.sit"
            tensorio.write_tensor(root / ref, stack[c])
            refs.append(ref)
        payload = {"image_id": image_id, "class_names": class_names, "files": refs}
    manifest.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return manifest, patch
