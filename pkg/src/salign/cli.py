"""Command-line entry points: ``si score``, ``si serve``, ``si probe``.

Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import tensorio
from .config import AppConfig, ConfigError, build_config, load_config_file
from .corpus import case_summary, export_report, histogram, load_corpus, score_corpus
from .coverage import FeatureSet
from .errors import ManifestError, TensorFormatError
from .probe import ProbeQuery, SaliencyStack, load_stack, probe

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="si",
        description="Score saliency/annotation agreement, serve the explorer API, "
        "or probe per-class saliency stacks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=Path, help="flat JSON key-value config file")
        p.add_argument("--manifest", help="corpus manifest (JSON Lines)")
        p.add_argument("--data-root", dest="data_root", help="payload root directory")
        p.add_argument("--rule", help="threshold rule, e.g. top_fraction=0.25")
        p.add_argument(
            "--abs",
            dest="abs",
            action="store_const",
            const=True,
            default=None,
            help="threshold absolute saliency values",
        )
        p.add_argument("--delta", type=float, help="regression correctness tolerance")
        p.add_argument("--thresholds", help="case cutoffs, e.g. high_iou=0.7,low_iou=0.1")
        p.add_argument(
            "--strict",
            action="store_const",
            const=True,
            default=None,
            help="abort the load on the first bad record",
        )

    p_score = sub.add_parser("score", help="score a corpus and write reports")
    common(p_score)
    p_score.add_argument("--format", choices=("csv", "jsonl"), help="report format")
    p_score.add_argument("--out", help="report output directory")

    p_serve = sub.add_parser("serve", help="serve the HTTP API")
    common(p_serve)
    p_serve.add_argument("--host", help="listen address")
    p_serve.add_argument("--port", type=int, help="listen port")
    p_serve.add_argument(
        "--stack",
        dest="stacks",
        action="append",
        help="stack manifest to load (repeatable)",
    )
    p_serve.add_argument(
        "--static", type=Path, help="directory of built frontend assets to serve at /"
    )

    p_probe = sub.add_parser("probe", help="rank classes against an annotation")
    common(p_probe)
    p_probe.add_argument(
        "--stack",
        dest="stacks",
        action="append",
        help="stack manifest to search (repeatable)",
    )
    p_probe.add_argument("--image-id", dest="image_id", required=True)
    p_probe.add_argument(
        "--annotation",
        required=True,
        type=Path,
        help="annotation payload (u8 mask tensor or index list)",
    )
    p_probe.add_argument("--metric", choices=("iou", "gtc", "sc"))
    p_probe.add_argument("--k", type=int, help="number of classes to print")
    return parser


def _config_from_args(args: argparse.Namespace) -> AppConfig:
    file_values: dict[str, object] = {}
    if args.config is not None:
        file_values = load_config_file(args.config)
    overrides = {
        key: getattr(args, key)
        for key in (
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
        if hasattr(args, key)
    }
    return build_config(file_values, overrides)


def _load_scored(config: AppConfig):
    if config.manifest is None:
        raise ConfigError("no corpus manifest configured (use --manifest)")
    corpus = load_corpus(config.manifest, config.data_root, strict=config.strict)
    scored = score_corpus(corpus, config.rule, config.thresholds, config.delta)
    return corpus, scored


def cmd_score(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    corpus, scored = _load_scored(config)

    out_dir = config.out
    out_dir.mkdir(parents=True, exist_ok=True)
    report = out_dir / f"report.{config.format}"
    export_report(scored, report, config.format)

    summary = {
        "manifest": str(config.manifest),
        "rule": str(config.rule),
        "take_absolute": config.rule.take_absolute,
        "delta": config.delta,
        "thresholds": config.as_dict()["thresholds"],
        "instances": len(scored),
        "diagnostics": len(corpus.diagnostics),
        "cases": {case.value: n for case, n in case_summary(scored).items()},
        "histograms": {
            metric: {
                "bin_edges": list(histogram(scored, metric).bin_edges),
                "counts": list(histogram(scored, metric).counts),
            }
            for metric in ("iou", "gtc", "sc")
        }
        if scored
        else {},
    }
    summary_path = out_dir / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")

    print(f"scored {len(scored)} instances -> {report}")
    print(f"summary -> {summary_path}")
    if corpus.diagnostics:
        for diag in corpus.diagnostics:
            print(f"diagnostic: {diag}", file=sys.stderr)
        print(f"{len(corpus.diagnostics)} diagnostics", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    config = _config_from_args(args)
    corpus, scored = _load_scored(config)
    stacks: dict[str, SaliencyStack] = {}
    for path in config.stacks:
        stack = load_stack(path)
        stacks[stack.image_id] = stack

    app = create_app(corpus, scored, config, stacks, static_dir=args.static)
    print(f"serving {len(scored)} instances on http://{config.host}:{config.port}")
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return EXIT_OK


def _read_annotation(path: Path, universe_size: int) -> FeatureSet:
    if not path.is_file():
        raise ManifestError(f"annotation not found: {path}")
    if tensorio.sniff_kind(path) == "tensor":
        mask = tensorio.read_tensor(path)
        if int(mask.size) != universe_size:
            raise ManifestError(
                f"annotation universe {mask.size} != stack universe {universe_size}"
            )
        return FeatureSet.from_mask(mask)
    return FeatureSet(universe_size, tensorio.read_index_list(path))


def cmd_probe(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    if not config.stacks:
        raise ConfigError("no stack manifests configured (use --stack)")
    stack = None
    for path in config.stacks:
        candidate = load_stack(path)
        if candidate.image_id == args.image_id:
            stack = candidate
            break
    if stack is None:
        print(f"error: no stack for image {args.image_id!r}", file=sys.stderr)
        return EXIT_RUNTIME

    annotation = _read_annotation(args.annotation, stack.universe_size)
    query = ProbeQuery(args.image_id, annotation, config.metric, config.k)
    result = probe(stack, query)
    for rank, entry in enumerate(result.entries, start=1):
        print(f"{rank} {entry.class_name} {entry.score:.6f}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"score": cmd_score, "serve": cmd_serve, "probe": cmd_probe}
    try:
        return handlers[args.command](args)
    except (ConfigError, ManifestError) as exc:
        # bad paths/flags/config are usage errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TensorFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
