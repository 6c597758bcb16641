"""Command-line interface: generate benchmarks, run agents, report results.

Exit codes: 0 on success, 1 when a run or report fails partway,
2 for unusable arguments or configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .agents import BUILTIN_AGENTS, make_agent
from .core.config import load_config
from .core.episode import run_episode
from .core.generate import cp_base_graph, generate_batch, make_environment, \
    read_batch_jsonl, write_batch_jsonl
from .core.types import APPS, BenchmarkConfig
from .cp.sft import export_sft_records
from .digest import canonical_json, digest
from .errors import NetbenchError, ParseError
from .evaluation.aggregate import aggregate_records, rows_to_csv
from .evaluation.metrics import score_episode
from .evaluation.report import emit_reports, read_metrics_jsonl


def _manifest_path(batch_path: Path) -> Path:
    return batch_path.with_suffix(batch_path.suffix + ".manifest.json")


def _config_from_args(args) -> BenchmarkConfig:
    if args.config:
        config = load_config(args.config)
        if args.app and args.app != config.app:
            raise ParseError(f"--app {args.app} conflicts with config app {config.app}")
        return config
    if not args.app:
        raise ParseError("either --config or --app is required")
    kwargs = {"app": args.app}
    for key in ("num_queries", "seed", "max_turns", "agent", "parallelism", "safety_rule"):
        value = getattr(args, key, None)
        if value is not None:
            kwargs[key] = value
    if getattr(args, "levels", None):
        kwargs["levels"] = tuple(int(p) for p in args.levels.split(","))
    return BenchmarkConfig(**kwargs)


# --- subcommands ------------------------------------------------------------

def cmd_generate(args) -> int:
    config = _config_from_args(args)
    pairs = generate_batch(config)
    out = Path(args.out)
    write_batch_jsonl(pairs, out)
    manifest = {
        "config": config.to_json(),
        "num_queries": len(pairs),
        "batch_digest": digest(out.read_text(encoding="utf-8")),
    }
    _manifest_path(out).write_text(canonical_json(manifest) + "\n", encoding="utf-8")
    if args.sft:
        if config.app != "cp":
            raise ParseError("--sft export requires the constructive application (cp)")
        export_sft_records(pairs, args.sft)
    print(f"wrote {len(pairs)} queries to {out}")
    return 0


def _run_one(config, query, truth, agent_spec, base_graph):
    env = make_environment(config, query, truth, base_graph=base_graph)
    agent = make_agent(agent_spec, query, truth)
    try:
        result = run_episode(env, agent, query, max_turns=config.max_turns)
    finally:
        close = getattr(agent, "close", None)
        if close:
            close()
    return score_episode(query, result)


def cmd_run(args) -> int:
    batch_path = Path(args.batch)
    pairs = read_batch_jsonl(batch_path)
    if not pairs:
        raise ParseError(f"batch {batch_path} holds no queries")

    manifest_path = _manifest_path(batch_path)
    if not manifest_path.exists():
        raise ParseError(f"missing manifest {manifest_path}; regenerate the batch")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    config = BenchmarkConfig(**{**manifest["config"],
                                **({"agent": args.agent} if args.agent else {}),
                                **({"parallelism": args.parallelism}
                                   if args.parallelism else {}),
                                **({"safety_rule": args.safety_rule}
                                   if args.safety_rule else {})})

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    done = set()
    if out.exists() and args.resume:
        done = {r.query_id for r in read_metrics_jsonl(out)}
    elif out.exists() and not args.resume:
        out.unlink()

    todo = [(q, t) for q, t in pairs if q.id not in done]
    base_graph = cp_base_graph(config) if config.app == "cp" else None
    failures = 0
    with out.open("a", encoding="utf-8") as fh:
        def emit(record):
            fh.write(canonical_json(record.to_json()) + "\n")
            fh.flush()

        if config.parallelism > 1:
            with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
                futures = [pool.submit(_run_one, config, q, t, config.agent, base_graph)
                           for q, t in todo]
                for future in futures:
                    try:
                        emit(future.result())
                    except NetbenchError as exc:
                        print(f"episode failed: {exc}", file=sys.stderr)
                        failures += 1
        else:
            for query, truth in todo:
                try:
                    emit(_run_one(config, query, truth, config.agent, base_graph))
                except NetbenchError as exc:
                    print(f"episode failed ({query.id}): {exc}", file=sys.stderr)
                    failures += 1

    print(f"ran {len(todo) - failures} episodes ({len(done)} resumed, {failures} failed); "
          f"metrics in {out}")
    return 1 if failures else 0


def cmd_report(args) -> int:
    records = read_metrics_jsonl(args.metrics)
    if args.out:
        paths = emit_reports(records, args.out)
        print(f"reports written to {paths['csv'].parent}")
    rows = aggregate_records(records)
    print(rows_to_csv(rows), end="")
    return 0


# --- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netbench",
        description="Dynamic network-operations benchmark: generation, execution, evaluation.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a query batch")
    gen.add_argument("--config", help="key=value configuration file")
    gen.add_argument("--app", choices=APPS)
    gen.add_argument("--num-queries", dest="num_queries", type=int)
    gen.add_argument("--levels", help="comma-separated complexity levels, e.g. 1,2,3")
    gen.add_argument("--seed", type=int)
    gen.add_argument("--out", required=True, help="output JSONL path")
    gen.add_argument("--sft", help="also export constructive fine-tuning records (cp only)")
    gen.set_defaults(func=cmd_generate)

    run = sub.add_parser("run", help="run an agent over a generated batch")
    run.add_argument("--batch", required=True, help="batch JSONL from 'generate'")
    run.add_argument("--agent",
                     help=f"one of {', '.join(BUILTIN_AGENTS)}, exec:<command>, or an http(s) URL")
    run.add_argument("--parallelism", type=int)
    run.add_argument("--safety-rule", dest="safety_rule", choices=("strict", "lenient"))
    run.add_argument("--resume", action="store_true",
                     help="keep existing metrics and only run missing queries")
    run.add_argument("--out", required=True, help="metrics JSONL path")
    run.set_defaults(func=cmd_run)

    rep = sub.add_parser("report", help="aggregate metrics into summary tables")
    rep.add_argument("--metrics", required=True, help="metrics JSONL from 'run'")
    rep.add_argument("--out", help="directory for metrics/summary artifacts")
    rep.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NetbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
