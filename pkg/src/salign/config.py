"""Application configuration: one flat key-value document plus CLI overrides.

A config file is a JSON object with flat keys matching the CLI flag names
(``manifest``, ``data_root``, ``rule``, ``abs``, ``delta``, ``thresholds``,
``metric``, ``k``, ``host``, ``port``, ``format``, ``out``, ``stacks``,
``strict``). Every key is overridable by the CLI flag of the same name.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .discretize import ThresholdRule
from .taxonomy import CaseThresholds

CONFIG_KEYS = (
    "manifest",
    "data_root",
    "rule",
    "abs",
    "delta",
    "thresholds",
    "metric",
    "k",
    "host",
    "port",
    "format",
    "out",
    "stacks",
    "strict",
)


class ConfigError(ValueError):
    """Bad configuration file or flag combination."""


@dataclass
class AppConfig:
    manifest: Path | None = None
    data_root: Path | None = None
    rule: ThresholdRule = ThresholdRule.mean_plus_sigma(1.0)
    delta: float = 0.05
    thresholds: CaseThresholds = field(default_factory=CaseThresholds)
    metric: str = "iou"
    k: int = 3
    host: str = "127.0.0.1"
    port: int = 8000
    format: str = "csv"
    out: Path = Path("si_report")
    stacks: tuple[Path, ...] = ()
    strict: bool = False

    def __post_init__(self) -> None:
        if self.delta < 0:
            raise ConfigError("delta must be >= 0")
        if not 0 < self.port < 65536:
            raise ConfigError(f"invalid port {self.port}")
        if self.format not in ("csv", "jsonl"):
            raise ConfigError(f"unknown report format {self.format!r}")
        if self.metric not in ("iou", "gtc", "sc"):
            raise ConfigError(f"unknown metric {self.metric!r}")
        if self.k < 1:
            raise ConfigError("k must be >= 1")

    def as_dict(self) -> dict[str, object]:
        """Echoable view of the effective configuration."""
        return {
            "manifest": str(self.manifest) if self.manifest else None,
            "data_root": str(self.data_root) if self.data_root else None,
            "rule": str(self.rule),
            "take_absolute": self.rule.take_absolute,
            "delta": self.delta,
            "thresholds": {
                name: getattr(self.thresholds, name)
                for name in CaseThresholds.__dataclass_fields__
            },
            "metric": self.metric,
            "k": self.k,
            "host": self.host,
            "port": self.port,
            "format": self.format,
            "out": str(self.out),
            "stacks": [str(p) for p in self.stacks],
            "strict": self.strict,
        }


def load_config_file(path: Path) -> dict[str, object]:
    """Read a flat JSON key-value config document."""
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: config must be a flat JSON object")
    unknown = set(obj) - set(CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"{path}: unknown config keys {sorted(unknown)}")
    return obj


def build_config(file_values: dict[str, object], overrides: dict[str, object]) -> AppConfig:
    """Merge config-file values with CLI overrides (overrides win)."""
    merged = dict(file_values)
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value

    take_absolute = bool(merged.get("abs", False))
    rule_text = merged.get("rule")
    try:
        rule = (
            ThresholdRule.parse(str(rule_text), take_absolute)
            if rule_text is not None
            else ThresholdRule.mean_plus_sigma(1.0, take_absolute)
        )
        thresholds = (
            CaseThresholds.parse(str(merged["thresholds"]))
            if merged.get("thresholds")
            else CaseThresholds()
        )
        stacks = tuple(Path(p) for p in merged.get("stacks", ()))
        return AppConfig(
            manifest=Path(merged["manifest"]) if merged.get("manifest") else None,
            data_root=Path(merged["data_root"]) if merged.get("data_root") else None,
            rule=rule,
            delta=float(merged.get("delta", 0.05)),
            thresholds=thresholds,
            metric=str(merged.get("metric", "iou")),
            k=int(merged.get("k", 3)),
            host=str(merged.get("host", "127.0.0.1")),
            port=int(merged.get("port", 8000)),
            format=str(merged.get("format", "csv")),
            out=Path(merged.get("out", "si_report")),
            stacks=stacks,
            strict=bool(merged.get("strict", False)),
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
