"""Regenerate the committed probe round-trip fixture.

The fixture pins one brush stroke, its rasterized annotation, and the
ranking the service/CLI must produce for it, so the frontend tests and the
CLI tests can assert against the same frozen truth.

Run from the repo root: ``python3 fixtures/probe/generate.py``
"""

import json
from pathlib import Path

from salign import ProbeQuery, load_stack, probe, synthetic, tensorio
from salign.coverage import FeatureSet
from salign.rle import encode_runs

HERE = Path(__file__).parent
DIMS = (24, 24)
BRUSH = {"cx": 6, "cy": 6, "radius": 4}
METRIC = "iou"
K = 3


def rasterize_brush(cx: int, cy: int, radius: int, dims) -> list[int]:
    """Pixels whose center lies within the circle; must match the UI brush."""
    h, w = dims
    out = []
    for row in range(h):
        for col in range(w):
            if (row - cy) ** 2 + (col - cx) ** 2 <= radius**2:
                out.append(row * w + col)
    return out


def main() -> None:
    manifest, _ = synthetic.build_stack(
        HERE, image_id="probe_demo", class_count=5, dims=DIMS, planted_class=3, seed=19
    )
    stack = load_stack(manifest)

    indices = rasterize_brush(BRUSH["cx"], BRUSH["cy"], BRUSH["radius"], DIMS)
    tensorio.write_index_list(HERE / "annotation.idx", indices)

    annotation = FeatureSet(stack.universe_size, indices)
    result = probe(stack, ProbeQuery("probe_demo", annotation, METRIC, K))

    payload = {
        "image_id": "probe_demo",
        "dims": list(DIMS),
        "brush": BRUSH,
        "metric": METRIC,
        "k": K,
        "annotation": indices,
        "annotation_runs": encode_runs(indices),
        "expected": [
            {
                "rank": rank,
                "class_name": entry.class_name,
                "score": round(entry.score, 6),
                "line": f"{rank} {entry.class_name} {entry.score:.6f}",
            }
            for rank, entry in enumerate(result.entries, start=1)
        ],
    }
    (HERE / "roundtrip.json").write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {HERE / 'roundtrip.json'}")
    for row in payload["expected"]:
        print(" ", row["line"])


if __name__ == "__main__":
    main()
