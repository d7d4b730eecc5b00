"""Walk through the three coverage scores on the four canonical overlaps.

The scores compare a human annotation G with a model saliency set S over
one feature universe:

    iou = |G n S| / |G u S|    similarity of the two sets (Jaccard)
    gtc = |G n S| / |G|        recall-like: how much of G the model uses
    sc  = |G n S| / |S|        precision-like: how much of S a human marked
"""

from salign import FeatureSet, compute_coverage

UNIVERSE = 100  # think: a 10x10 image, flattened row-major

scenarios = [
    ("disjoint (model looked elsewhere)", range(0, 10), range(50, 60)),
    ("G inside S, S twice as large", range(0, 10), range(0, 20)),
    ("S inside G, half the size", range(0, 20), range(0, 10)),
    ("identical sets", range(0, 10), range(0, 10)),
]

print(f"{'scenario':38} {'iou':>6} {'gtc':>6} {'sc':>6}")
for name, g_idx, s_idx in scenarios:
    g = FeatureSet(UNIVERSE, g_idx)
    s = FeatureSet(UNIVERSE, s_idx)
    scores = compute_coverage(g, s)
    print(f"{name:38} {scores.iou:6.2f} {scores.gtc:6.2f} {scores.sc:6.2f}")

print()
print("gtc = 1 means G is contained in S; sc = 1 means S is contained in G;")
print("iou = 1 only when the sets match exactly.")

# Empty saliency sets score zero with a flag instead of raising, so weak
# thresholds do not break batch runs:
empty = compute_coverage(FeatureSet(UNIVERSE, [1, 2]), FeatureSet(UNIVERSE, []))
print(f"\nempty S -> scores {(empty.iou, empty.gtc, empty.sc)}, "
      f"flagged: empty_saliency={empty.empty_saliency}")
