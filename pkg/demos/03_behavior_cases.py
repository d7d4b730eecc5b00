"""The eight recurring behavior cases, built from set geometry.

Each case is a combination of prediction correctness with high/low score
patterns: equal sets, a subset, a superset, or a disjoint set, each under
a correct and an incorrect prediction.
"""

from salign import FeatureSet, classify_case, compute_coverage

UNIVERSE = 1024
G = FeatureSet(UNIVERSE, range(0, 10))

geometries = [
    ("S = G", FeatureSet(UNIVERSE, range(0, 10))),
    ("S strict subset of G", FeatureSet(UNIVERSE, range(0, 3))),
    ("S disjoint from G", FeatureSet(UNIVERSE, range(500, 510))),
    ("S strict superset of G", FeatureSet(UNIVERSE, range(0, 40))),
]

print(f"{'geometry':26} {'iou':>5} {'gtc':>5} {'sc':>5}   correct case        incorrect case")
for name, s in geometries:
    scores = compute_coverage(G, s)
    when_right = classify_case(scores, correct=True)
    when_wrong = classify_case(scores, correct=False)
    print(
        f"{name:26} {scores.iou:5.2f} {scores.gtc:5.2f} {scores.sc:5.2f}   "
        f"{when_right.value:19} {when_wrong.value}"
    )

print(
    "\nmid-range scores fall into the explicit 'uncategorized' bucket:",
    classify_case(
        compute_coverage(G, FeatureSet(UNIVERSE, list(range(0, 5)) + list(range(500, 505)))),
        correct=True,
    ).value,
)
