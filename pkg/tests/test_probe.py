"""Probe ranking and stack loading tests."""

from __future__ import annotations

import json

import numpy as np
import pytest

from salign import synthetic, tensorio
from salign.coverage import FeatureSet, compute_coverage
from salign.discretize import SaliencyField, ThresholdRule
from salign.errors import ManifestError, UniverseMismatchError
from salign.probe import ProbeQuery, SaliencyStack, load_stack, probe


def stack_from_values(values_per_class, dims=(4, 4), image_id="img0"):
    fields = tuple(
        SaliencyField(dims, np.asarray(v, dtype=np.float32)) for v in values_per_class
    )
    names = tuple(f"class{c}" for c in range(len(fields)))
    return SaliencyStack(image_id, names, fields)


def planted_stack(class_count=3, dims=(4, 4), planted=2, region=(0, 1, 2)):
    """Class ``planted`` is strongly positive exactly on ``region``."""
    universe = int(np.prod(dims))
    values = []
    for c in range(class_count):
        v = np.full(universe, -0.5, dtype=np.float32)
        if c == planted:
            v[list(region)] = 5.0
        else:
            v[[universe - 1 - c]] = 5.0
        values.append(v.reshape(dims))
    return stack_from_values(values)


class TestSaliencyStack:
    def test_validation(self):
        field = SaliencyField((2, 2), [1, 2, 3, 4])
        with pytest.raises(ValueError, match="at least one"):
            SaliencyStack("x", (), ())
        with pytest.raises(ValueError, match="unique"):
            SaliencyStack("x", ("a", "a"), (field, field))
        with pytest.raises(ValueError, match="names"):
            SaliencyStack("x", ("a", "b"), (field,))
        other = SaliencyField((4,), [1, 2, 3, 4])
        with pytest.raises(ValueError, match="dims"):
            SaliencyStack("x", ("a", "b"), (field, other))

    def test_discretized_sets_cached_per_rule(self):
        stack = planted_stack()
        first = stack.discretized()
        assert stack.discretized() is first
        other_rule = ThresholdRule.top_n(2)
        assert stack.discretized(other_rule) is stack.discretized(other_rule)
        assert stack.discretized(other_rule) is not first


class TestProbe:
    def test_identity_annotation_ranks_planted_class_first(self):
        stack = planted_stack(planted=2, region=(0, 1, 2))
        annotation = FeatureSet(16, [0, 1, 2])
        result = probe(stack, ProbeQuery("img0", annotation, "iou", 3))
        assert result.entries[0].class_name == "class2"
        assert result.entries[0].score == 1.0

    def test_gtc_ranks_superset_class_first(self):
        # class0's discretized set strictly contains the annotation;
        # class1's is disjoint from it
        v0 = np.full(16, -1.0, dtype=np.float32)
        v0[[0, 1, 2, 3]] = 5.0
        v1 = np.full(16, -1.0, dtype=np.float32)
        v1[[8, 9]] = 5.0
        stack = stack_from_values([v0.reshape(4, 4), v1.reshape(4, 4)])
        annotation = FeatureSet(16, [0, 1])
        result = probe(stack, ProbeQuery("img0", annotation, "gtc", 2))
        assert result.entries[0].class_name == "class0"
        assert result.entries[0].score == 1.0
        assert result.entries[1].score == 0.0

    def test_k_truncation(self):
        stack = planted_stack(class_count=3)
        annotation = FeatureSet(16, [0, 1, 2])
        for k in range(1, 8):
            result = probe(stack, ProbeQuery("img0", annotation, "iou", k))
            assert len(result.entries) == min(k, 3)

    def test_scores_non_increasing_and_ties_by_index(self):
        # identical fields: all classes tie, order must be class index
        v = np.zeros(16, dtype=np.float32)
        v[[0, 1]] = 3.0
        stack = stack_from_values([v.reshape(4, 4)] * 4)
        annotation = FeatureSet(16, [0, 1])
        result = probe(stack, ProbeQuery("img0", annotation, "iou", 4))
        assert [e.class_name for e in result.entries] == [
            "class0",
            "class1",
            "class2",
            "class3",
        ]

    def test_ranking_equals_brute_force_all_metrics(self):
        rng = np.random.default_rng(17)
        for trial in range(5):
            c = int(rng.integers(2, 33))
            values = rng.normal(size=(c, 3, 3)).astype(np.float32)
            stack = stack_from_values(list(values), dims=(3, 3))
            annotation = FeatureSet(
                9, rng.choice(9, size=int(rng.integers(1, 10)), replace=False)
            )
            for metric in ("iou", "gtc", "sc"):
                result = probe(stack, ProbeQuery("img0", annotation, metric, c))
                sets = stack.discretized()
                brute = sorted(
                    range(c),
                    key=lambda i: (
                        -getattr(compute_coverage(annotation, sets[i]), metric),
                        i,
                    ),
                )
                assert [e.class_name for e in result.entries] == [
                    f"class{i}" for i in brute
                ]

    def test_empty_class_set_scores_zero(self):
        flat = np.zeros(16, dtype=np.float32)  # constant field discretizes empty
        v = np.full(16, -1.0, dtype=np.float32)
        v[[0]] = 5.0
        stack = stack_from_values([flat.reshape(4, 4), v.reshape(4, 4)])
        annotation = FeatureSet(16, [0])
        result = probe(stack, ProbeQuery("img0", annotation, "iou", 2))
        assert result.entries[0].class_name == "class1"
        assert result.entries[1].score == 0.0
        assert len(result.entries[1].features) == 0

    def test_errors(self):
        stack = planted_stack()
        annotation = FeatureSet(16, [0])
        with pytest.raises(KeyError, match="unknown image"):
            probe(stack, ProbeQuery("other", annotation, "iou", 1))
        with pytest.raises(UniverseMismatchError):
            probe(stack, ProbeQuery("img0", FeatureSet(9, [0]), "iou", 1))
        with pytest.raises(ValueError, match="non-empty"):
            ProbeQuery("img0", FeatureSet(16, []), "iou", 1)
        with pytest.raises(ValueError, match="k"):
            ProbeQuery("img0", annotation, "iou", 0)
        with pytest.raises(ValueError, match="metric"):
            ProbeQuery("img0", annotation, "f1", 1)

    def test_determinism(self):
        stack = planted_stack()
        annotation = FeatureSet(16, [0, 1, 5])
        q = ProbeQuery("img0", annotation, "iou", 3)
        first = probe(stack, q)
        second = probe(stack, q)
        assert [(e.class_name, e.score) for e in first.entries] == [
            (e.class_name, e.score) for e in second.entries
        ]


class TestLoadStack:
    def test_packed_variant(self, tmp_path):
        manifest, patch = synthetic.build_stack(tmp_path, class_count=4, packed=True)
        stack = load_stack(manifest)
        assert len(stack.class_names) == 4
        assert stack.dims == (16, 16)
        # planted class discretizes to exactly the patch under the default rule
        sets = stack.discretized()
        assert sets[2] == FeatureSet.from_mask(patch)

    def test_per_class_files_round_trip_equal_to_packed(self, tmp_path):
        packed_manifest, _ = synthetic.build_stack(tmp_path / "a", packed=True)
        files_manifest, _ = synthetic.build_stack(tmp_path / "b", packed=False)
        packed = load_stack(packed_manifest)
        files = load_stack(files_manifest)
        assert packed.class_names == files.class_names
        for fa, fb in zip(packed.fields, files.fields):
            assert np.array_equal(fa.values, fb.values)

    def test_count_mismatch_names_both_counts(self, tmp_path):
        manifest, _ = synthetic.build_stack(
            tmp_path, class_count=2, planted_class=0, packed=True
        )
        obj = json.loads(manifest.read_text())
        obj["class_names"] = ["a", "b", "c"]
        manifest.write_text(json.dumps(obj))
        with pytest.raises(ManifestError, match="3 class names.*2"):
            load_stack(manifest)

    def test_malformed_tensor_propagates(self, tmp_path):
        manifest, _ = synthetic.build_stack(tmp_path, packed=True)
        (tmp_path / "stack_packed.sit").write_bytes(b"SI-TENSOR v1 dtype=f32 dims=zz\n")
        with pytest.raises(Exception, match="dims"):
            load_stack(manifest)

    def test_rule_override(self, tmp_path):
        manifest, _ = synthetic.build_stack(tmp_path, packed=True)
        obj = json.loads(manifest.read_text())
        obj["rule"] = "top_n=3"
        manifest.write_text(json.dumps(obj))
        stack = load_stack(manifest)
        assert stack.rule == ThresholdRule.top_n(3)

    def test_packed_must_be_three_axes(self, tmp_path):
        tensorio.write_tensor(tmp_path / "flat.sit", np.zeros((4, 4), dtype=np.float32))
        manifest = tmp_path / "stack.json"
        manifest.write_text(
            json.dumps({"image_id": "x", "class_names": ["a"], "packed": "flat.sit"})
        )
        with pytest.raises(ManifestError, match="CxHxW"):
            load_stack(manifest)

    def test_requires_exactly_one_payload_key(self, tmp_path):
        manifest = tmp_path / "stack.json"
        manifest.write_text(json.dumps({"image_id": "x", "class_names": ["a"]}))
        with pytest.raises(ManifestError, match="packed"):
            load_stack(manifest)
