"""Discretize continuous saliency into feature sets, two ways.

Score-based rules only look at the values; model-based selection walks
features from most to least salient, asking a confidence oracle after
each addition until the prediction is confident enough.
"""

import numpy as np

from salign import (
    FeatureSet,
    SaliencyField,
    ThresholdRule,
    discretize_model_based,
    discretize_score_based,
    population_stats,
)

rng = np.random.default_rng(0)
field = SaliencyField((6, 6), rng.normal(0.0, 1.0, size=(6, 6)))

mean, sigma = population_stats(field, take_absolute=False)
print(f"field: 6x6, mean {mean:+.3f}, population sigma {sigma:.3f}\n")

for rule in [
    ThresholdRule.mean_plus_sigma(1.0),
    ThresholdRule.top_fraction(0.25),
    ThresholdRule.top_n(5),
    ThresholdRule.positive_top_n(5),
]:
    selected = discretize_score_based(field, rule)
    print(f"{str(rule):24} -> {len(selected):2d} features: {list(selected)}")

print("\nties break toward the lower index, so results are reproducible:")
tied = SaliencyField((4,), [1.0, 1.0, 1.0, 1.0])
print(f"  top_n=2 on a constant field -> {list(discretize_score_based(tied, ThresholdRule.top_n(2)))}")

# Model-based selection with a toy oracle whose confidence is just the
# fraction of a hidden 'important' region covered by the subset.
important = FeatureSet(36, range(0, 12))


def oracle(subset: FeatureSet) -> float:
    hit = len(set(subset.members) & set(important.members))
    return hit / len(important)


boosted = np.array(field.values, copy=True)
boosted[list(important.members)] += 2.5
boosted_field = SaliencyField((6, 6), boosted)

result = discretize_model_based(boosted_field, oracle, confidence_threshold=0.85)
print(
    f"\nmodel-based @0.85: converged={result.converged} after {result.queries} "
    f"oracle calls, kept {len(result.features)} features"
)
