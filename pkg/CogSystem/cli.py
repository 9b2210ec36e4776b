import os
import sys
import pandas as pd
from typing import Optional
from loguru import logger
from argparse import ArgumentParser, BooleanOptionalAction, Namespace
from concurrent.futures import ThreadPoolExecutor
from CogSystem.bench import (
    corpus_stats,
    load_benchmark,
    reference_stats,
    stats_frame,
    validate_benchmark,
)
from CogSystem.dataset import (
    export_review_sheet,
    generate_category,
    generate_opinion_set,
    generate_profile,
    import_review_sheet,
    load_opinion_set,
    questionnaire_record,
    rank_supporters,
    save_opinion_set,
    topic_slug,
)
from CogSystem.errors import BenchmarkError, CogError, ConfigError, PromptError
from CogSystem.evaluation import (
    build_report,
    export_rating_sheet,
    load_human_ratings,
    load_rationality,
    load_sessions,
    plot_report,
    write_report,
)
from CogSystem.llms import BaseLLM, Transcript, get_llm, read_provider_config
from CogSystem.system import CognitiveSystem, SessionLog, read_run_config
from CogSystem.utils import dumps_json, init_all_seeds, init_logger, write_text_atomic

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _provider_path(args: Namespace) -> Optional[str]:
    if getattr(args, "provider_config", None):
        return args.provider_config
    if getattr(args, "provider", None):
        return os.path.join("config", "providers", f"{args.provider}.json")
    return None


def _llm(args: Namespace) -> BaseLLM:
    path = _provider_path(args) or os.path.join("config", "providers", "replay.json")
    return get_llm(read_provider_config(path), transcript=args.transcript, record_path=args.record)


def cmd_run(args: Namespace) -> int:
    config = read_run_config(
        args.config,
        bench_path=args.bench,
        variant=args.variant,
        topics=args.topic,
        profiles=args.profile,
        agent=args.agent,
        agent_config=args.agent_config,
        provider_config=_provider_path(args),
        transcript=args.transcript,
        record=args.record,
        feedback=args.feedback,
        recall_k=args.recall_k,
        strict=args.strict,
        output_dir=args.output_dir,
        seed=args.seed,
        jobs=args.jobs,
    )
    init_all_seeds(config.seed)
    system = CognitiveSystem(config, progress=config.jobs == 1 and not args.no_progress)
    pairs = system.pairs()
    logger.info(f"Running {config.agent.value} on {len(pairs)} sessions with {config.jobs} jobs")
    if config.jobs == 1:
        logs = [system(topic_id, profile_name) for topic_id, profile_name in pairs]
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            logs = list(pool.map(lambda pair: system(*pair), pairs))
    aborted = [f"{log.topic_id}/{log.profile_name}" for log in logs if not log.complete]
    if aborted:
        logger.error(f"{len(aborted)} session(s) aborted: {', '.join(aborted)}")
        return EXIT_FAILURE
    return EXIT_OK


def cmd_eval(args: Namespace) -> int:
    sessions = load_sessions(args.sessions)
    if not sessions:
        logger.error(f"No session logs under {args.sessions}")
        return EXIT_FAILURE
    report = build_report(
        sessions,
        load_human_ratings(args.humans),
        load_rationality(args.rationality) if args.rationality else None,
        literal=args.literal,
    )
    write_report(report, args.out)
    if args.plot:
        plot_report(report, os.path.join(args.out, "report.png"))
    return EXIT_OK


def cmd_gen_opinions(args: Namespace) -> int:
    llm = _llm(args)
    if args.category:
        sets = generate_category(args.category, llm)
        out_dir = args.out or os.path.join("data", "generated", "opinions")
        for topic, opinions in sets.items():
            save_opinion_set(opinions, os.path.join(out_dir, f"{topic_slug(topic)}.json"))
        logger.info(f"Wrote {len(sets)} opinion sets to {out_dir}")
        return EXIT_OK
    opinions = generate_opinion_set(args.topic, llm)
    out = args.out or os.path.join("data", "generated", "opinions", f"{topic_slug(args.topic)}.json")
    save_opinion_set(opinions, out)
    logger.info(f"Wrote {out}")
    return EXIT_OK


def cmd_gen_profile(args: Namespace) -> int:
    profile = generate_profile(args.character, _llm(args))
    out = args.out or os.path.join("data", "generated", "profiles", f"{topic_slug(args.character)}.json")
    write_text_atomic(out, dumps_json(profile.to_record()))
    logger.info(f"Wrote {out}")
    return EXIT_OK


def cmd_gen_rank(args: Namespace) -> int:
    ranks = rank_supporters(load_opinion_set(path) for path in args.opinions)
    if args.top:
        ranks = ranks[: args.top]
    frame = pd.DataFrame([r.model_dump() for r in ranks], columns=["rank", "supporter", "mentions"])
    if args.out:
        write_text_atomic(args.out, frame.to_csv(index=False, lineterminator="\n"))
        logger.info(f"Wrote {args.out}")
    print(frame.to_string(index=False))
    return EXIT_OK


def cmd_gen_sheet(args: Namespace) -> int:
    export_review_sheet(load_opinion_set(args.opinions), args.out, topic_id=args.topic_id)
    return EXIT_OK


def cmd_gen_import(args: Namespace) -> int:
    questionnaire = import_review_sheet(args.sheet)
    out = args.out or f"{questionnaire.topic_id}.json"
    write_text_atomic(out, dumps_json(questionnaire_record(questionnaire)))
    logger.info(f"Wrote questionnaire with {questionnaire.m} questions to {out}")
    return EXIT_OK


def cmd_validate(args: Namespace) -> int:
    report = validate_benchmark(load_benchmark(args.bench))
    if report.ok:
        print(f"{args.bench}: OK")
        return EXIT_OK
    for violation in report.violations:
        print(f"{violation.code}\t{violation.location}\t{violation.message}")
    logger.error(f"{len(report.violations)} violation(s) in {args.bench}")
    return EXIT_FAILURE


def cmd_stats(args: Namespace) -> int:
    bench = load_benchmark(args.bench)
    reference = reference_stats(bench.variant) if args.reference else None
    frame = stats_frame(corpus_stats(bench), reference)
    print(frame.to_string(float_format=lambda v: f"{v:.2f}"))
    return EXIT_OK


def cmd_replay_inspect(args: Namespace) -> int:
    transcript = Transcript.from_jsonl(args.transcript)
    width = args.width
    rows = [
        {
            "index": index,
            "expect": (entry.expect or "")[:width],
            "response": " ".join(entry.response.split())[:width],
        }
        for index, entry in enumerate(transcript.entries)
    ]
    print(pd.DataFrame(rows, columns=["index", "expect", "response"]).to_string(index=False))
    print(f"{len(rows)} entries")
    return EXIT_OK


def cmd_export_sheet(args: Namespace) -> int:
    log = SessionLog.load(args.session)
    questionnaire = None
    if args.bench:
        try:
            questionnaire = load_benchmark(args.bench).questionnaire(log.topic_id)
        except KeyError as e:
            raise BenchmarkError(str(e.args[0])) from e
    export_rating_sheet(log, args.out, questionnaire)
    return EXIT_OK


def _provider_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("--provider", choices=["replay", "live"], help="Provider mode; reads config/providers/<mode>.json")
    parser.add_argument("--provider-config", help="Provider config file, overrides --provider")
    parser.add_argument("--transcript", help="Transcript file (replay mode)")
    parser.add_argument("--record", help="Append live completions to this transcript file")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="coggpt", description="Iterative cognitive agents and their benchmark")
    parser.add_argument("--log-level", default="INFO", help="Level of the stderr log sink")
    parser.add_argument("--log-dir", default="logs", help="Directory of the DEBUG log file")
    parser.add_argument("--no-log-file", action="store_true", help="Do not write a log file")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run agent sessions")
    run.add_argument("--config", help="Run manifest (config/runs/*.json)")
    run.add_argument("--bench", help="Benchmark root directory")
    run.add_argument("--variant", choices=["a", "v"])
    run.add_argument("--topic", action="append", help="Topic id; repeat for several")
    run.add_argument("--profile", action="append", help="Profile name; repeat for several")
    run.add_argument("--agent", choices=["coggpt", "cot", "react", "reflexion"])
    run.add_argument("--agent-config", help="Agent config file")
    _provider_arguments(run)
    run.add_argument("--feedback", help="Feedback file for reflexion")
    run.add_argument("--recall-k", type=int, help="Knowledge statements recalled per question")
    run.add_argument("--strict", action=BooleanOptionalAction, default=None, help="Require the canonical schedule")
    run.add_argument("--output-dir", help="Where session logs go")
    run.add_argument("--seed", type=int)
    run.add_argument("--jobs", type=int, help="Sessions run in parallel")
    run.add_argument("--no-progress", action="store_true")
    run.set_defaults(func=cmd_run)

    evaluate = sub.add_parser("eval", help="Score session logs against human ratings")
    evaluate.add_argument("--sessions", required=True, help="Directory searched for session.json files")
    evaluate.add_argument("--humans", required=True, help="Human ratings file")
    evaluate.add_argument("--rationality", help="Rationality scores file")
    evaluate.add_argument("--out", default="reports")
    evaluate.add_argument("--literal", action="store_true", help="Also report per-question exact agreement")
    evaluate.add_argument("--plot", action="store_true", help="Write report.png")
    evaluate.set_defaults(func=cmd_eval)

    gen = sub.add_parser("gen", help="Build benchmark pieces").add_subparsers(dest="gen_command", required=True)
    opinions = gen.add_parser("opinions", help="Generate opinions on a topic")
    target = opinions.add_mutually_exclusive_group(required=True)
    target.add_argument("--topic")
    target.add_argument("--category", help="Generate for every topic of a catalog category")
    opinions.add_argument("--out")
    _provider_arguments(opinions)
    opinions.set_defaults(func=cmd_gen_opinions)

    profile = gen.add_parser("profile", help="Generate a profile for a character")
    profile.add_argument("--character", required=True)
    profile.add_argument("--out")
    _provider_arguments(profile)
    profile.set_defaults(func=cmd_gen_profile)

    rank = gen.add_parser("rank", help="Rank supporters across opinion files")
    rank.add_argument("--opinions", nargs="+", required=True)
    rank.add_argument("--top", type=int, default=0)
    rank.add_argument("--out", help="CSV output")
    rank.set_defaults(func=cmd_gen_rank)

    sheet = gen.add_parser("sheet", help="Export an opinion file for review")
    sheet.add_argument("--opinions", required=True)
    sheet.add_argument("--out", required=True)
    sheet.add_argument("--topic-id")
    sheet.set_defaults(func=cmd_gen_sheet)

    imported = gen.add_parser("import", help="Turn a reviewed sheet into a questionnaire")
    imported.add_argument("--sheet", required=True)
    imported.add_argument("--out")
    imported.set_defaults(func=cmd_gen_import)

    validate = sub.add_parser("validate", help="Check a benchmark against the canonical layout")
    validate.add_argument("--bench", required=True)
    validate.set_defaults(func=cmd_validate)

    stats = sub.add_parser("stats", help="Mean word counts per category")
    stats.add_argument("--bench", required=True)
    stats.add_argument("--reference", action="store_true", help="Show the published means alongside")
    stats.set_defaults(func=cmd_stats)

    inspect = sub.add_parser("replay-inspect", help="List the entries of a transcript")
    inspect.add_argument("--transcript", required=True)
    inspect.add_argument("--width", type=int, default=60)
    inspect.set_defaults(func=cmd_replay_inspect)

    export = sub.add_parser("export-sheet", help="Write a rating sheet for a session")
    export.add_argument("--session", required=True, help="A session.json file")
    export.add_argument("--out", required=True)
    export.add_argument("--bench", help="Benchmark root, adds question statements")
    export.set_defaults(func=cmd_export_sheet)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """Parse `argv`, configure logging and run the sub-command.

    Returns:
        `int`: 0 on success, 1 on a runtime or evaluation failure, 2 on a usage or configuration error.
    """
    args = build_parser().parse_args(argv)
    command = args.command if args.command != "gen" else f"gen-{args.gen_command}"
    init_logger(command, level=args.log_level, log_dir=None if args.no_log_file else args.log_dir)
    try:
        return args.func(args)
    except (ConfigError, BenchmarkError, PromptError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except CogError as e:
        logger.error(str(e))
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
