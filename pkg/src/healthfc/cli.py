"""Command-line entry point.

Subcommands mirror the pipeline stages (curate, rank, predict, explain,
cohere, report) plus ``all``. Exit codes: 0 success, 1 stage failure,
2 configuration error. Stage failures emit one machine-readable JSON
error record on stderr.
"""

import argparse
import datetime
import json
import sys
import time
from pathlib import Path

from .pipeline import (
    STAGES,
    ConfigError,
    PipelineConfig,
    StageError,
    run,
)
from .service_client import ENV_BACKEND_URL, backend_url_from_env


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="healthfc",
        description="Curate health fact-checking corpora and evaluate "
        "veracity predictions and explanation quality.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in (*STAGES, "all"):
        p = sub.add_parser(name, help=f"run the {name} stage{'s' if name == 'all' else ''}")
        p.add_argument("--config", type=str, default=None, help="JSON config file")
        p.add_argument("--corpus", type=str, default=None, help="raw corpus JSONL")
        p.add_argument("--out", type=str, default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="split/training seed")
        p.add_argument(
            "--backend",
            type=str,
            default=None,
            help=f"inference service URL or 'stub' (also via ${ENV_BACKEND_URL})",
        )
        p.add_argument("--k", type=int, default=None, help="evidence sentences to keep")
        p.add_argument("--annotations", type=str, default=None, help="rater CSV for agreement stats")
    return parser


def _resolve_config(args: argparse.Namespace) -> PipelineConfig:
    if args.config:
        config = PipelineConfig.from_file(args.config)
    else:
        config = PipelineConfig()
    # CLI flags beat the config file; the environment beats the default backend.
    if args.corpus is not None:
        config.corpus = args.corpus
    if args.out is not None:
        config.out_dir = args.out
    if args.seed is not None:
        config.seed = args.seed
    if args.k is not None:
        config.k = args.k
    if args.annotations is not None:
        config.annotations = args.annotations
    if args.backend is not None:
        config.backend = args.backend
    elif config.backend == "stub":
        env_url = backend_url_from_env()
        if env_url:
            config.backend = env_url
    if not config.corpus:
        raise ConfigError("no corpus given (use --corpus or a config file)")
    config.validate()
    return config


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _resolve_config(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2

    stages = STAGES if args.command == "all" else (args.command,)
    started = datetime.datetime.now(datetime.timezone.utc)
    t0 = time.perf_counter()
    try:
        results = run(config, stages)
    except StageError as e:
        print(json.dumps({"error": e.to_dict()}, sort_keys=True), file=sys.stderr)
        return 1
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - t0

    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    meta = {
        "started_at": started.isoformat(),
        "elapsed_seconds": elapsed,
        "stages": list(results),
        "config": config.to_dict(),
    }
    (out / "run_meta.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    for stage, summary in results.items():
        line = {k: v for k, v in summary.items() if not isinstance(v, dict)}
        print(f"{stage}: {json.dumps(line, sort_keys=True)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
