"""Turn continuous per-feature saliency scores into discrete feature sets.

Two families of rules are supported. Score-based rules look only at the
saliency values (statistical cutoff, top fraction, top n, top n positive).
Model-based selection instead walks features in descending score order,
querying a confidence oracle after each addition until the model is
confident enough with the subset alone.

All score-based selection is deterministic: ties are broken toward the
lower feature index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coverage import FeatureSet
from .errors import OracleError

RULE_KINDS = ("mean_plus_sigma", "top_fraction", "top_n", "gt_size", "positive_top_n")

#: Given a candidate feature subset, returns the model's confidence in its
#: original predicted class as a float in [0, 1]. Must be deterministic for
#: a fixed subset within one session. One session per thread.
ConfidenceOracle = Callable[[FeatureSet], float]


@dataclass(frozen=True)
class SaliencyField:
    """Continuous per-feature importance scores for one instance.

    ``values`` is one finite score per feature in row-major order over
    ``dims``.
    """

    dims: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        values = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if int(np.prod(dims)) != values.size:
            raise ValueError(f"dims {dims} do not match {values.size} values")
        if values.size and not np.all(np.isfinite(values)):
            raise ValueError("saliency values must be finite (no NaN/Inf)")
        values.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "values", values)

    @property
    def universe_size(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class ThresholdRule:
    """A discretization rule plus whether to take absolute values first.

    Kinds:

    * ``mean_plus_sigma`` -- keep values strictly above mean + k * sigma
      (population sigma), so a constant field selects nothing.
    * ``top_fraction``    -- keep the ceil(p * N) largest values.
    * ``top_n``           -- keep the min(n, N) largest values.
    * ``gt_size``         -- placeholder resolved per instance to
      ``top_n(|G|)`` via :meth:`resolved`.
    * ``positive_top_n``  -- keep the n largest strictly positive values,
      fewer if fewer exist.
    """

    kind: str
    param: float | None = None
    take_absolute: bool = False

    def __post_init__(self) -> None:
        if self.kind not in RULE_KINDS:
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.kind == "mean_plus_sigma":
            if self.param is None or self.param < 0:
                raise ValueError("mean_plus_sigma requires k >= 0")
            object.__setattr__(self, "param", float(self.param))
        elif self.kind == "top_fraction":
            if self.param is None or not 0.0 < self.param <= 1.0:
                raise ValueError("top_fraction requires 0 < p <= 1")
            object.__setattr__(self, "param", float(self.param))
        elif self.kind in ("top_n", "positive_top_n"):
            if self.param is None or int(self.param) != self.param or self.param < 1:
                raise ValueError(f"{self.kind} requires an integer n >= 1")
            object.__setattr__(self, "param", int(self.param))
        elif self.param is not None:
            raise ValueError("gt_size takes no parameter")

    @classmethod
    def mean_plus_sigma(cls, k: float = 1.0, take_absolute: bool = False) -> "ThresholdRule":
        return cls("mean_plus_sigma", k, take_absolute)

    @classmethod
    def top_fraction(cls, p: float, take_absolute: bool = False) -> "ThresholdRule":
        return cls("top_fraction", p, take_absolute)

    @classmethod
    def top_n(cls, n: int, take_absolute: bool = False) -> "ThresholdRule":
        return cls("top_n", n, take_absolute)

    @classmethod
    def gt_size(cls, take_absolute: bool = False) -> "ThresholdRule":
        return cls("gt_size", None, take_absolute)

    @classmethod
    def positive_top_n(cls, n: int, take_absolute: bool = False) -> "ThresholdRule":
        return cls("positive_top_n", n, take_absolute)

    @classmethod
    def parse(cls, text: str, take_absolute: bool = False) -> "ThresholdRule":
        """Parse ``"kind"`` or ``"kind=param"`` as used by CLI flags."""
        kind, sep, raw = text.strip().partition("=")
        if kind not in RULE_KINDS:
            raise ValueError(f"unknown rule kind {kind!r}")
        if kind == "gt_size":
            if sep:
                raise ValueError("gt_size takes no parameter")
            return cls(kind, None, take_absolute)
        if not sep or not raw:
            raise ValueError(f"rule {kind!r} requires a parameter, e.g. {kind}=1")
        param = float(raw) if kind in ("mean_plus_sigma", "top_fraction") else int(raw)
        return cls(kind, param, take_absolute)

    def resolved(self, gt_size: int) -> "ThresholdRule":
        """Resolve a ``gt_size`` rule to ``top_n(|G|)``; others pass through."""
        if self.kind != "gt_size":
            return self
        if gt_size < 1:
            raise ValueError("gt_size rule requires a non-empty ground truth")
        return ThresholdRule("top_n", gt_size, self.take_absolute)

    def __str__(self) -> str:
        if self.param is None:
            return self.kind
        return f"{self.kind}={self.param}"


@dataclass(frozen=True)
class ModelBasedResult:
    """Outcome of model-based selection: the subset plus convergence status."""

    features: FeatureSet
    converged: bool
    queries: int


def population_stats(field: SaliencyField, take_absolute: bool) -> tuple[float, float]:
    """Mean and population (divide-by-N) standard deviation of the values."""
    if field.universe_size == 0:
        raise ValueError("empty saliency field")
    vals = np.abs(field.values) if take_absolute else field.values
    return float(vals.mean()), float(vals.std())


def _descending_order(vals: np.ndarray) -> np.ndarray:
    # stable sort on negated values: descending by score, lower index wins ties
    return np.argsort(-vals, kind="stable")


def discretize_score_based(field: SaliencyField, rule: ThresholdRule) -> FeatureSet:
    """Apply a score-based rule; deterministic for a fixed field and rule."""
    n = field.universe_size
    if n == 0:
        raise ValueError("empty saliency field")
    vals = np.abs(field.values) if rule.take_absolute else field.values

    if rule.kind == "mean_plus_sigma":
        cutoff = vals.mean() + rule.param * vals.std()
        return FeatureSet(n, np.flatnonzero(vals > cutoff))
    if rule.kind == "top_fraction":
        m = math.ceil(rule.param * n)
        return FeatureSet(n, _descending_order(vals)[:m])
    if rule.kind == "top_n":
        m = min(int(rule.param), n)
        return FeatureSet(n, _descending_order(vals)[:m])
    if rule.kind == "positive_top_n":
        order = _descending_order(vals)
        positive = order[vals[order] > 0]
        return FeatureSet(n, positive[: int(rule.param)])
    raise ValueError("gt_size rule must be resolved with ThresholdRule.resolved(|G|)")


def discretize_model_based(
    field: SaliencyField,
    oracle: ConfidenceOracle,
    confidence_threshold: float,
) -> ModelBasedResult:
    """Select positively scored features until the oracle is confident.

    Features are added one at a time in descending score order; the oracle
    is queried after each addition and selection stops at the first subset
    whose confidence reaches ``confidence_threshold``. If the threshold is
    never reached the full positive set is returned unconverged.
    """
    if not 0.0 < confidence_threshold <= 1.0:
        raise ValueError("confidence_threshold must be in (0, 1]")
    n = field.universe_size
    if n == 0:
        raise ValueError("empty saliency field")
    order = _descending_order(field.values)
    positive = order[field.values[order] > 0]

    picked: list[int] = []
    queries = 0
    for idx in positive:
        picked.append(int(idx))
        subset = FeatureSet(n, picked)
        try:
            confidence = float(oracle(subset))
        except Exception as exc:
            raise OracleError(f"oracle failed on subset of size {len(subset)}") from exc
        queries += 1
        if confidence >= confidence_threshold:
            return ModelBasedResult(subset, converged=True, queries=queries)
    return ModelBasedResult(FeatureSet(n, positive), converged=False, queries=queries)
