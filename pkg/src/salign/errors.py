"""Exception types shared across the toolkit."""


class UniverseMismatchError(ValueError):
    """Two feature sets (or a set and a field) disagree on universe size."""


class EmptyGroundTruthError(ValueError):
    """A ground-truth annotation with no features cannot be scored."""


class TensorFormatError(ValueError):
    """A tensor payload is malformed or its header cannot be parsed."""


class ManifestError(ValueError):
    """A corpus or stack manifest is malformed or references bad payloads."""


class OracleError(RuntimeError):
    """A confidence oracle failed while evaluating a feature subset."""
