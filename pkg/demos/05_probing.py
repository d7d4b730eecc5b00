"""'What if' probing: rank every class against a hand-drawn annotation.

A stack holds one saliency field per class for a single image. Annotating
a region and ranking classes by coverage answers questions like 'which
classes does the model associate with this object?'.
"""

import tempfile
from pathlib import Path

import numpy as np

from salign import FeatureSet, ProbeQuery, load_stack, probe, synthetic

workdir = Path(tempfile.mkdtemp(prefix="salign_probe_"))
manifest, patch = synthetic.build_stack(
    workdir, image_id="img0", class_count=6, dims=(16, 16), planted_class=2, seed=7
)
stack = load_stack(manifest)
print(f"stack: {len(stack.class_names)} classes over {stack.dims}, rule {stack.rule}\n")

# Annotate exactly the planted region: the planted class must win with iou 1.
annotation = FeatureSet.from_mask(patch)
result = probe(stack, ProbeQuery("img0", annotation, metric="iou", k=3))
print("annotating the planted patch:")
for rank, entry in enumerate(result.entries, start=1):
    print(f"  {rank} {entry.class_name:8} iou {entry.score:.6f} "
          f"({len(entry.features)} salient features)")

# Shrink the annotation to a corner of the patch and re-rank by gtc:
corner = np.zeros_like(patch)
corner[2:4, 2:4] = patch[2:4, 2:4]
small = FeatureSet.from_mask(corner)
result = probe(stack, ProbeQuery("img0", small, metric="gtc", k=3))
print("\nannotating just a corner, ranked by gtc (is my region inside the class's set?):")
for rank, entry in enumerate(result.entries, start=1):
    print(f"  {rank} {entry.class_name:8} gtc {entry.score:.6f}")
