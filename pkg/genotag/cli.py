"""
Command-line entry point: ``genotag {tokenize|analyze|train|tag|eval|sweep|stats}``.

Exit codes: 0 success, 1 data or contract error, 2 I/O or environment error.
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple

from genotag import __version__
from genotag.config import Config
from genotag.constraints.negative_rules import NegativeRule, RuleLog, parse_rule_file
from genotag.core.tags import IDENTITY_MAP, TagsetMap, load_tagset_map
from genotag.corpus_io import read_tagged, read_token_stream, read_training_corpus, write_tagged, write_token_stream
from genotag.errors import ConfigError, GenotagError
from genotag.evaluation.score_output import (
    ambiguity_profile,
    baseline_delta,
    compare_schedules,
    default_checkpoints,
    expand_schedules,
    genotype_growth,
    render_comparison,
    render_growth,
    score,
    threshold_range,
)
from genotag.morphology.analyze_tokens import (
    AnalyzedToken,
    Lexicon,
    Morphology,
    ProperNounDict,
    load_lexicon,
    load_proper_nouns,
    load_suffix_rules,
    save_proper_nouns,
)
from genotag.pipeline.run_schedule import Schedule, Tagger, parse_schedule
from genotag.preprocessor.tokenize_text import Preprocessor, Sentence, load_word_list
from genotag.seed_corpus import write_seed_corpus
from genotag.statistics.decision_tables import MODEL_HEADER, Model, load_model, save_model, train

logger = logging.getLogger(__name__)


def _config(args: argparse.Namespace) -> Config:
    overrides = {name: getattr(args, name, None) for name in Config.model_fields}
    return Config.from_env(**overrides)


def _open_output(args: argparse.Namespace) -> TextIO:
    if getattr(args, "output", None):
        return open(args.output, "w", encoding="utf-8", newline="\n")
    return sys.stdout


def _preprocessor(config: Config, lexicon: Optional[Lexicon]) -> Preprocessor:
    if config.abbreviations is not None:
        config.require("abbreviations")
    if config.clitics is not None:
        config.require("clitics")
    return Preprocessor(
        compounds=lexicon.compound_keys if lexicon is not None else None,
        abbreviations=load_word_list(config.abbreviations) if config.abbreviations else None,
        clitics=load_word_list(config.clitics) if config.clitics else None,
    )


def _read_sentences(args: argparse.Namespace, config: Config, lexicon: Optional[Lexicon]) -> List[Sentence]:
    if args.tokens:
        return read_token_stream(args.input)
    text = Path(args.input).read_text(encoding="utf-8")
    return _preprocessor(config, lexicon).tokenize(text)


def _morphology(config: Config, lexicon: Lexicon) -> Morphology:
    learned = None
    if config.proper_nouns is not None:
        config.require("proper_nouns")
        learned = load_proper_nouns(config.proper_nouns)
    suffix_rules = None
    if config.suffix_rules is not None:
        config.require("suffix_rules")
        suffix_rules = load_suffix_rules(config.suffix_rules)
    return Morphology(lexicon, learned_proper_nouns=learned, suffix_rules=suffix_rules)


def _load_step_resources(config: Config, schedules: Sequence[Schedule]
                         ) -> Tuple[Optional[List[NegativeRule]], Optional[Model], Optional[TagsetMap]]:
    """Load the resources the schedules use; a needed but unset one is reported later by the tagger."""
    rules = model = tagset_map = None
    if config.rules is not None and any(s.needs_rules for s in schedules):
        config.require("rules")
        rules = parse_rule_file(config.rules)
    if config.model is not None and any(s.needs_model for s in schedules):
        config.require("model")
        model = load_model(config.model)
    if config.tagset_map is not None and any(s.needs_tagset_map for s in schedules):
        config.require("tagset_map")
        tagset_map = load_tagset_map(config.tagset_map)
    return rules, model, tagset_map


def _run_tagger(tagger: Tagger, sentences: Sequence[Sentence], config: Config) -> List[List[AnalyzedToken]]:
    if config.jobs > 1:
        return asyncio.run(tagger.tag_all_async(sentences, config.jobs))
    return tagger.run(sentences, progress=config.progress)


def _tag(args: argparse.Namespace, config: Config, schedule: Schedule) -> int:
    config.require("lexicon")
    lexicon = load_lexicon(config.lexicon)
    rules, model, tagset_map = _load_step_resources(config, [schedule])
    sentences = _read_sentences(args, config, lexicon)
    morphology = _morphology(config, lexicon)
    if config.two_pass:
        found = morphology.collect_proper_nouns(sentences)
        logger.info(f"Collected {found} proper nouns before analysis")

    rule_log = RuleLog() if getattr(args, "rule_log", None) else None
    tagger = Tagger(schedule, morphology, rules, model, tagset_map, rule_log)
    tagged = _run_tagger(tagger, sentences, config)

    out = _open_output(args)
    try:
        write_tagged(tagged, out)
    finally:
        if out is not sys.stdout:
            out.close()
    if rule_log is not None:
        rule_log.write_tsv(args.rule_log)
        logger.info(f"Wrote {len(rule_log)} rule firings to {args.rule_log} ({len(rule_log.blocked)} blocked)")
    return 0


def cmd_tokenize(args: argparse.Namespace, config: Config) -> int:
    lexicon = None
    if config.lexicon is not None:
        config.require("lexicon")
        lexicon = load_lexicon(config.lexicon)
    text = Path(args.input).read_text(encoding="utf-8")
    sentences = _preprocessor(config, lexicon).tokenize(text)
    out = _open_output(args)
    try:
        write_token_stream(sentences, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_analyze(args: argparse.Namespace, config: Config) -> int:
    return _tag(args, config, parse_schedule("M"))


def cmd_tag(args: argparse.Namespace, config: Config) -> int:
    return _tag(args, config, config.parsed_schedule())


def cmd_train(args: argparse.Namespace, config: Config) -> int:
    config.require("lexicon")
    lexicon = load_lexicon(config.lexicon)
    tagset_map = None
    if config.tagset_map is not None:
        config.require("tagset_map")
        tagset_map = load_tagset_map(config.tagset_map)
    corpus = read_training_corpus(args.corpus)
    proper_nouns = ProperNounDict()
    model = train(corpus, lexicon, tagset_map or IDENTITY_MAP, proper_nouns=proper_nouns, progress=config.progress)
    save_model(model, args.out)

    print(f"unigram\t{model.unigram.row_count}")
    print(f"bigram\t{model.bigram.row_count}")
    print(f"trigram\t{model.trigram.row_count}")
    if args.top:
        for decision in model.unigram.strongest(args.top):
            print(f"{decision.key[0]}\t{decision.choice[0]}\t{decision.f}/{decision.n}\t{decision.strength:.2f}")
    if args.proper_nouns_out:
        save_proper_nouns(proper_nouns, args.proper_nouns_out)
        logger.info(f"Saved {len(proper_nouns)} proper nouns to {args.proper_nouns_out}")
    return 0


def cmd_eval(args: argparse.Namespace, config: Config) -> int:
    gold = read_tagged(args.gold)
    report = score(read_tagged(args.system), gold)
    print(report.render_tsv() if args.tsv else report.render(), end="")
    if args.baseline:
        delta = baseline_delta(report, score(read_tagged(args.baseline), gold))
        print(f"baseline_delta\t{delta:+.2f}" if args.tsv else f"{'vs baseline':<14}{delta:>+20.2f}")
    return 0


def cmd_sweep(args: argparse.Namespace, config: Config) -> int:
    config.require("lexicon")
    lexicon = load_lexicon(config.lexicon)
    texts = expand_schedules([s for s in args.schedules.split(";") if s.strip()], args.threshold_range)
    schedules = {str(s): s for s in (config.parsed_schedule(t) for t in texts)}
    rules, model, tagset_map = _load_step_resources(config, list(schedules.values()))
    sentences = read_token_stream(args.gold)
    gold = read_tagged(args.gold)

    def tag_with(name: str) -> List[List[AnalyzedToken]]:
        tagger = Tagger(schedules[name], _morphology(config, lexicon), rules, model, tagset_map)
        return _run_tagger(tagger, sentences, config)

    results = compare_schedules(list(schedules), tag_with, gold, progress=config.progress)
    print(render_comparison(results, tsv=args.tsv), end="")
    return 0


def cmd_stats(args: argparse.Namespace, config: Config) -> int:
    config.require("lexicon")
    lexicon = load_lexicon(config.lexicon)
    sentences = _read_sentences(args, config, lexicon)
    analyzed = Tagger(parse_schedule("M"), _morphology(config, lexicon)).run(sentences, progress=config.progress)
    print(ambiguity_profile(analyzed).render(), end="")
    total = sum(1 for sentence in analyzed for t in sentence if not t.is_marker)
    checkpoints = args.checkpoints or default_checkpoints(total)
    print()
    print(render_growth(genotype_growth(analyzed, checkpoints)), end="")
    return 0


COMMANDS = {
    "tokenize": cmd_tokenize,
    "analyze": cmd_analyze,
    "train": cmd_train,
    "tag": cmd_tag,
    "eval": cmd_eval,
    "stats": cmd_stats,
    "sweep": cmd_sweep,
}


def _checkpoint_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated token counts, got {text!r}")


def _threshold_range(text: str) -> List[float]:
    try:
        return threshold_range(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genotag", description="Genotype-based part-of-speech disambiguation")
    parser.add_argument("--version", action="version", version=f"genotag {__version__} ({MODEL_HEADER})")
    parser.add_argument("--log-level", dest="log_level", help="Logging level (default: INFO or $GENOTAG_LOG_LEVEL)")
    parser.add_argument("--progress", action="store_true", default=None, help="Show progress bars on standard error")
    parser.add_argument("--seed-corpus", metavar="DIR", help="Write a synthetic lexicon, rules and corpora to DIR")
    parser.add_argument("--seed-sentences", type=int, default=200, help="Sentences per synthetic corpus")
    parser.add_argument("--seed", type=int, default=0, help="Random seed of the synthetic training corpus")

    text_input = argparse.ArgumentParser(add_help=False)
    text_input.add_argument("input", help="UTF-8 text file")
    text_input.add_argument("--abbrev", dest="abbreviations", help="Abbreviation list, one per line")
    text_input.add_argument("--clitics", help="Personal-pronoun list for clitic splitting, one per line")
    text_input.add_argument("--output", help="Write to this file instead of standard output")

    analysis = argparse.ArgumentParser(add_help=False)
    analysis.add_argument("--lexicon", help="Lexicon file")
    analysis.add_argument("--tokens", action="store_true", help="Input is a token stream or tagged corpus, not raw text")
    analysis.add_argument("--proper-nouns", dest="proper_nouns", help="Proper-noun dictionary saved by train")
    analysis.add_argument("--suffix-rules", dest="suffix_rules", help="Suffix guessing rules for unknown words")
    analysis.add_argument("--two-pass", dest="two_pass", action="store_true", default=None,
                          help="Collect proper nouns over the whole input before analysis")

    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("tokenize", parents=[text_input], help="Segment and tokenize text")
    p.add_argument("--lexicon", help="Lexicon whose compounds are joined")

    sub.add_parser("analyze", parents=[text_input, analysis], help="Morphological analysis only")

    p = sub.add_parser("tag", parents=[text_input, analysis], help="Run a disambiguation schedule")
    p.add_argument("--schedule", help="Steps, e.g. M,D:3,B,U:90,R")
    p.add_argument("--rules", help="Negative constraint file")
    p.add_argument("--model", help="Model file written by train")
    p.add_argument("--tagset-map", dest="tagset_map", help="Tagset map for the R step")
    p.add_argument("--iterations", type=int, help="Default sweeps for D steps")
    p.add_argument("--unigram-threshold", dest="unigram_threshold", type=float)
    p.add_argument("--bigram-threshold", dest="bigram_threshold", type=float)
    p.add_argument("--trigram-threshold", dest="trigram_threshold", type=float)
    p.add_argument("--jobs", type=int, help="Sentences tagged concurrently (default 1)")
    p.add_argument("--rule-log", dest="rule_log", help="Write constraint firings to this TSV file")

    p = sub.add_parser("train", help="Train decision tables on a hand-tagged corpus")
    p.add_argument("corpus", help="Training corpus (surface<TAB>GOLD per line)")
    p.add_argument("--lexicon", help="Lexicon file")
    p.add_argument("--out", required=True, help="Model file to write")
    p.add_argument("--tagset-map", dest="tagset_map", help="Reduce genotypes and gold tags before counting")
    p.add_argument("--proper-nouns-out", dest="proper_nouns_out", help="Save the proper nouns met in the corpus")
    p.add_argument("--top", type=int, default=0, help="Print the N strongest unigram decisions")

    p = sub.add_parser("eval", help="Score tagged output against a gold corpus")
    p.add_argument("gold")
    p.add_argument("system")
    p.add_argument("--tsv", action="store_true", help="Print TSV instead of aligned text")
    p.add_argument("--baseline", help="Tagged output of a baseline run to compare against")

    p = sub.add_parser("sweep", help="Score several tagging schemes on a held-out gold corpus")
    p.add_argument("gold", help="Held-out gold corpus; its first column is the text to tag")
    p.add_argument("--schedules", required=True,
                   help="Semicolon-separated schedules; {t} stands for each threshold of --threshold-range")
    p.add_argument("--threshold-range", dest="threshold_range", type=_threshold_range,
                   help="Thresholds start:stop:step, both ends included, e.g. 50:100:10")
    p.add_argument("--lexicon", help="Lexicon file")
    p.add_argument("--rules", help="Negative constraint file")
    p.add_argument("--model", help="Model file written by train")
    p.add_argument("--tagset-map", dest="tagset_map", help="Tagset map for the R step")
    p.add_argument("--proper-nouns", dest="proper_nouns", help="Proper-noun dictionary saved by train")
    p.add_argument("--suffix-rules", dest="suffix_rules", help="Suffix guessing rules for unknown words")
    p.add_argument("--jobs", type=int, help="Sentences tagged concurrently (default 1)")
    p.add_argument("--tsv", action="store_true", help="Print TSV instead of aligned text")

    p = sub.add_parser("stats", parents=[analysis], help="Ambiguity profile and genotype growth")
    p.add_argument("input", help="Corpus (raw text, or a token stream with --tokens)")
    p.add_argument("--abbrev", dest="abbreviations", help="Abbreviation list, one per line")
    p.add_argument("--clitics", help="Personal-pronoun list, one per line")
    p.add_argument("--checkpoints", type=_checkpoint_list, help="Comma-separated prefix sizes in tokens")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        logging.basicConfig(level=config.log_level, stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
        if args.seed_corpus:
            paths = write_seed_corpus(args.seed_corpus, args.seed_sentences, args.seed)
            for role, path in paths.items():
                print(f"{role}\t{path}")
            return 0
        if not args.command:
            parser.print_help(sys.stderr)
            return 2
        return COMMANDS[args.command](args, config)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GenotagError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
