"""Correctness checks and the eight-way behavior-case assignment.

Cases combine prediction correctness with high/low patterns of the three
coverage scores. Because iou <= min(gtc, sc), the low-iou predicates are
very permissive, so :func:`classify_case` checks the stricter predicates
first and falls back to an explicit ``uncategorized`` bucket for mid-range
scores. :func:`case_predicates` exposes the raw multi-label view.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .coverage import CoverageScores


class BehaviorCase(str, Enum):
    HUMAN_ALIGNED = "human_aligned"
    SUFFICIENT_SUBSET = "sufficient_subset"
    SUFFICIENT_CONTEXT = "sufficient_context"
    CONTEXT_DEPENDENT = "context_dependent"
    CONFUSER = "confuser"
    INSUFFICIENT_SUBSET = "insufficient_subset"
    DISTRACTOR = "distractor"
    CONTEXT_CONFUSION = "context_confusion"
    UNCATEGORIZED = "uncategorized"

    def __str__(self) -> str:  # "human_aligned", not "BehaviorCase.HUMAN_ALIGNED"
        return self.value


#: Cases that only apply to correctly predicted instances.
CORRECT_CASES = frozenset(
    {
        BehaviorCase.HUMAN_ALIGNED,
        BehaviorCase.SUFFICIENT_SUBSET,
        BehaviorCase.SUFFICIENT_CONTEXT,
        BehaviorCase.CONTEXT_DEPENDENT,
    }
)

#: Cases that only apply to incorrectly predicted instances.
INCORRECT_CASES = frozenset(
    {
        BehaviorCase.CONFUSER,
        BehaviorCase.INSUFFICIENT_SUBSET,
        BehaviorCase.DISTRACTOR,
        BehaviorCase.CONTEXT_CONFUSION,
    }
)

TASKS = ("classification", "regression")


@dataclass(frozen=True)
class Outcome:
    """Label/prediction pair for one instance.

    Regression outcomes are correct within ``delta`` of the label (0.05 by
    default, i.e. half a star on a 0..1 rating scale).
    """

    task: str
    label: object
    prediction: object
    delta: float = 0.05

    def __post_init__(self) -> None:
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}")
        if self.delta < 0:
            raise ValueError("delta must be >= 0")
        if self.task == "regression":
            float(self.label)  # type: ignore[arg-type]
            float(self.prediction)  # type: ignore[arg-type]


def is_correct(outcome: Outcome) -> bool:
    """Exact match for classification; within +/- delta for regression."""
    if outcome.task == "classification":
        return outcome.label == outcome.prediction
    return abs(float(outcome.prediction) - float(outcome.label)) <= outcome.delta  # type: ignore[arg-type]


@dataclass(frozen=True)
class CaseThresholds:
    """High/low cutoffs per metric used by the case predicates.

    Defaults follow the ranges the explorer views highlight (0.7..1.0 as
    high, 0.0..0.3 as low for GTC/SC, 0.0..0.1 as low for IoU); all are
    configuration, not learned values.
    """

    high_iou: float = 0.7
    low_iou: float = 0.1
    high_gtc: float = 0.7
    low_gtc: float = 0.3
    high_sc: float = 0.7
    low_sc: float = 0.3

    def __post_init__(self) -> None:
        for metric in ("iou", "gtc", "sc"):
            low = getattr(self, f"low_{metric}")
            high = getattr(self, f"high_{metric}")
            if not 0.0 <= low <= high <= 1.0:
                raise ValueError(
                    f"need 0 <= low_{metric} <= high_{metric} <= 1, got {low}, {high}"
                )

    @classmethod
    def parse(cls, text: str) -> "CaseThresholds":
        """Parse ``"high_iou=0.7,low_iou=0.1,..."``; omitted keys keep defaults."""
        kwargs: dict[str, float] = {}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            key, sep, raw = part.partition("=")
            if not sep or key not in cls.__dataclass_fields__:
                raise ValueError(f"bad threshold spec {part!r}")
            kwargs[key] = float(raw)
        return cls(**kwargs)


DEFAULT_THRESHOLDS = CaseThresholds()


def _ordered_predicates(
    scores: CoverageScores, correct: bool, t: CaseThresholds
) -> list[tuple[BehaviorCase, bool]]:
    # Stricter/more specific predicates first: iou-based, then subset
    # patterns, then context patterns, then the permissive low-iou catch.
    if correct:
        return [
            (BehaviorCase.HUMAN_ALIGNED, scores.iou >= t.high_iou),
            (
                BehaviorCase.SUFFICIENT_SUBSET,
                scores.sc >= t.high_sc and scores.gtc <= t.low_gtc,
            ),
            (
                BehaviorCase.CONTEXT_DEPENDENT,
                scores.gtc >= t.high_gtc and scores.sc <= t.low_sc,
            ),
            (BehaviorCase.SUFFICIENT_CONTEXT, scores.iou <= t.low_iou),
        ]
    return [
        (BehaviorCase.CONFUSER, scores.iou >= t.high_iou),
        (
            BehaviorCase.INSUFFICIENT_SUBSET,
            scores.sc >= t.high_sc and scores.gtc <= t.low_gtc,
        ),
        (
            BehaviorCase.CONTEXT_CONFUSION,
            scores.gtc >= t.high_gtc and scores.sc <= t.low_sc,
        ),
        (BehaviorCase.DISTRACTOR, scores.iou <= t.low_iou),
    ]


def classify_case(
    scores: CoverageScores,
    correct: bool,
    thresholds: CaseThresholds = DEFAULT_THRESHOLDS,
) -> BehaviorCase:
    """Assign exactly one behavior case; total over all inputs."""
    for case, holds in _ordered_predicates(scores, correct, thresholds):
        if holds:
            return case
    return BehaviorCase.UNCATEGORIZED


def case_predicates(
    scores: CoverageScores,
    correct: bool,
    thresholds: CaseThresholds = DEFAULT_THRESHOLDS,
) -> set[BehaviorCase]:
    """Every case whose raw predicate holds, ignoring precedence.

    ``classify_case``'s answer is always a member whenever it is not
    ``uncategorized``.
    """
    return {
        case
        for case, holds in _ordered_predicates(scores, correct, thresholds)
        if holds
    }
