"""salign: quantify saliency/annotation agreement and audit model behavior.

The library compares a model's salient input features against human
annotations using three set-coverage scores, classifies each instance into
one of eight recurring behavior cases, batch-audits whole corpora, and
ranks classes against interactive annotations.
"""

from .coverage import CoverageScores, FeatureSet, compute_coverage, intersect, union
from .discretize import (
    ConfidenceOracle,
    ModelBasedResult,
    SaliencyField,
    ThresholdRule,
    discretize_model_based,
    discretize_score_based,
    population_stats,
)
from .errors import (
    EmptyGroundTruthError,
    ManifestError,
    OracleError,
    TensorFormatError,
    UniverseMismatchError,
)
from .taxonomy import (
    DEFAULT_THRESHOLDS,
    BehaviorCase,
    CaseThresholds,
    Outcome,
    case_predicates,
    classify_case,
    is_correct,
)
from .corpus import (
    Corpus,
    InstanceFilter,
    InstanceRecord,
    ScoredInstance,
    ScoreHistogram,
    SortSpec,
    case_summary,
    export_report,
    filter_sort,
    histogram,
    load_corpus,
    score_corpus,
    score_instance,
)
from .probe import (
    DEFAULT_STACK_RULE,
    ProbeEntry,
    ProbeQuery,
    ProbeResult,
    SaliencyStack,
    load_stack,
    probe,
)

__version__ = "0.1.0"

__all__ = [
    "BehaviorCase",
    "CaseThresholds",
    "ConfidenceOracle",
    "Corpus",
    "CoverageScores",
    "DEFAULT_STACK_RULE",
    "DEFAULT_THRESHOLDS",
    "EmptyGroundTruthError",
    "FeatureSet",
    "InstanceFilter",
    "InstanceRecord",
    "ManifestError",
    "ModelBasedResult",
    "OracleError",
    "Outcome",
    "ProbeEntry",
    "ProbeQuery",
    "ProbeResult",
    "SaliencyField",
    "SaliencyStack",
    "ScoreHistogram",
    "ScoredInstance",
    "SortSpec",
    "TensorFormatError",
    "ThresholdRule",
    "UniverseMismatchError",
    "case_predicates",
    "case_summary",
    "classify_case",
    "compute_coverage",
    "discretize_model_based",
    "discretize_score_based",
    "export_report",
    "filter_sort",
    "histogram",
    "intersect",
    "is_correct",
    "load_corpus",
    "load_stack",
    "population_stats",
    "probe",
    "score_corpus",
    "score_instance",
    "union",
]
