"""Command-line interface.

Subcommands:

    induce            run lexicon induction over a corpus
    evaluate          score a lexicon TSV against a silver lexicon
    baseline-id       score the copy baseline against a silver lexicon
    rulebook-inspect  show the strongest cells of a matrix dump
    mock-oracle-gen   build a unigram-fallback mock oracle table

Option values resolve as: command-line flag, then config file (simple
``key = value`` lines, ``#`` comments), then built-in default.  The
oracle URL additionally falls back to $LEXFORGE_ORACLE_URL.

Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 oracle
unreachable after retries.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Callable, Sequence

from . import evaluation, induction, lexicon, oracle, orthography, scheduler

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_ORACLE = 4

ORACLE_URL_ENV = "LEXFORGE_ORACLE_URL"

log = logging.getLogger("lexforge.cli")


class ConfigError(Exception):
    pass


def load_config_file(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines; blank lines and # comments ignored."""
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


_BOOL_VALUES = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


class Settings:
    """Flag/config-file/default resolution for one subcommand run."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        self.file_values: dict[str, str] = {}
        config_path = getattr(args, "config", None)
        if config_path:
            self.file_values = load_config_file(config_path)

    def get(self, key: str, default=None, convert: Callable = str):
        flag_value = getattr(self.args, key, None)
        if flag_value is not None:
            return flag_value
        if key in self.file_values:
            raw = self.file_values[key]
            try:
                if convert is bool:
                    return _BOOL_VALUES[raw.lower()]
                return convert(raw)
            except (ValueError, KeyError) as exc:
                raise ConfigError(f"config value {key} = {raw!r} is invalid") from exc
        return default

    def require(self, key: str, flag: str, convert: Callable = str):
        value = self.get(key, None, convert)
        if value is None:
            raise ConfigError(f"missing required option {flag}")
        return value


def _build_oracle(settings: Settings) -> oracle.Oracle:
    mock_table = settings.get("mock_table")
    url = settings.get("oracle_url") or os.environ.get(ORACLE_URL_ENV)
    if mock_table:
        return oracle.load_mock_table(mock_table)
    if url:
        return oracle.HttpOracle(url)
    raise ConfigError("need --mock-table or --oracle-url (or $LEXFORGE_ORACLE_URL)")


def cmd_induce(args: argparse.Namespace) -> int:
    settings = Settings(args)
    corpus_path = settings.require("corpus", "--corpus")
    vocab_path = settings.require("hrl_vocab", "--hrl-vocab")
    out_lexicon = settings.require("out_lexicon", "--out-lexicon")
    config = induction.InductionConfig(
        reranker=settings.get("reranker", orthography.BASIC),
        similarity_threshold=settings.get("threshold", 0.5, float),
        max_passes=settings.get("passes", 3, int),
        top_k=settings.get("top_k", 30, int),
        batch_size=settings.get("batch_size", 100, int),
        freeze_null=settings.get("freeze_null", False, bool),
        path_mode=settings.get("path_mode", orthography.UNIT_COST),
        random_seed=settings.get("seed", 0, int),
    )
    oracle_client = _build_oracle(settings)

    sentences = scheduler.load_corpus(corpus_path)
    vocabulary = scheduler.load_vocabulary(vocab_path)
    lex, rulebook, report = induction.run_induction(
        sentences, vocabulary, oracle_client, config
    )

    lexicon.write_lexicon(lex, out_lexicon, top_k=config.top_k)
    print(f"wrote {len(lex)} lexicon entries to {out_lexicon}", file=sys.stderr)
    out_report = settings.get("out_report")
    if out_report:
        import json

        with open(out_report, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
    out_rulebook = settings.get("out_rulebook")
    if out_rulebook and rulebook is not None:
        orthography.write_rulebook(rulebook, out_rulebook)

    totals = report.totals()
    if totals.items_processed > 0 and totals.oracle_failures == totals.items_processed:
        print("oracle unreachable: every attempt failed", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


def _parse_ks(raw: str | None, default: tuple[int, ...] = (1, 2, 3, 5)) -> list[int]:
    if raw is None:
        return list(default)
    try:
        ks = [int(part) for part in str(raw).split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --k value {raw!r}") from exc
    if not ks:
        raise ConfigError("empty --k value")
    return ks


def cmd_evaluate(args: argparse.Namespace) -> int:
    settings = Settings(args)
    lexicon_path = settings.require("out_lexicon", "--out-lexicon")
    silver_path = settings.require("silver", "--silver")
    ks = _parse_ks(settings.get("k"))
    lex = lexicon.load_lexicon(lexicon_path)
    silver = evaluation.load_silver(silver_path)
    results = evaluation.evaluate(lex.predictions(), silver, ks)
    print(evaluation.format_results(results))
    out_report = settings.get("out_report")
    if out_report:
        with open(out_report, "w", encoding="utf-8") as fh:
            fh.write(evaluation.results_to_json(results))
    return EXIT_OK


def cmd_baseline_id(args: argparse.Namespace) -> int:
    settings = Settings(args)
    silver_path = settings.require("silver", "--silver")
    ks = _parse_ks(settings.get("k"))
    silver = evaluation.load_silver(silver_path)
    results = evaluation.identity_baseline(silver, ks)
    print(evaluation.format_results(results))
    out_report = settings.get("out_report")
    if out_report:
        with open(out_report, "w", encoding="utf-8") as fh:
            fh.write(evaluation.results_to_json(results))
    return EXIT_OK


def cmd_rulebook_inspect(args: argparse.Namespace) -> int:
    settings = Settings(args)
    rulebook_path = settings.require("out_rulebook", "--out-rulebook")
    top = settings.get("top", 10, int)
    source_char = settings.get("source_char")
    rows = orthography.load_rulebook_rows(rulebook_path)
    if source_char is not None:
        rows = [row for row in rows if row[0] == source_char]
        if not rows:
            raise ConfigError(f"no row for source character {source_char!r}")
        shown = rows[:top]
    else:
        # strongest non-identity correspondences across the whole matrix
        cells = [row for row in rows if row[0] != row[1]]
        cells.sort(key=lambda row: (-row[3], row[0], row[1]))
        shown = cells[:top]
    print("source\ttarget\tcount\tprobability")
    for a, b, count, prob in shown:
        print(f"{a}\t{b}\t{count:.6f}\t{prob:.6f}")
    return EXIT_OK


def cmd_mock_oracle_gen(args: argparse.Namespace) -> int:
    settings = Settings(args)
    corpus_path = settings.require("corpus", "--corpus")
    out_path = settings.require("mock_table", "--mock-table")
    top_k = settings.get("top_k", oracle.DEFAULT_TOP_K, int)
    sentences = scheduler.load_corpus(corpus_path)
    freqs: dict[str, int] = {}
    for sentence in sentences:
        for token in sentence.tokens:
            if not scheduler.is_punctuation(token):
                freqs[token] = freqs.get(token, 0) + 1
    fallback = oracle.unigram_fallback(freqs, top_k)
    oracle.write_mock_table(out_path, signatures={}, fallback=fallback, top_k=top_k)
    print(f"wrote mock table with {len(fallback)} fallback words to {out_path}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexforge",
        description="Bilingual lexicon induction via mask filling and orthographic reranking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="config file with key = value lines")
        p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    p_induce = sub.add_parser("induce", help="run lexicon induction")
    add_common(p_induce)
    p_induce.add_argument("--corpus", help="source-language corpus, one sentence per line")
    p_induce.add_argument("--hrl-vocab", dest="hrl_vocab", help="target-language vocabulary file")
    p_induce.add_argument("--oracle-url", dest="oracle_url", help="mask-fill server base URL")
    p_induce.add_argument("--mock-table", dest="mock_table", help="mock oracle table (JSON)")
    p_induce.add_argument("--reranker", choices=list(orthography.RERANKERS))
    p_induce.add_argument("--threshold", type=float, help="similarity gate (strict >)")
    p_induce.add_argument("--passes", type=int, help="attempts per word")
    p_induce.add_argument("--top-k", dest="top_k", type=int, help="candidates per query")
    p_induce.add_argument("--batch-size", dest="batch_size", type=int)
    p_induce.add_argument(
        "--freeze-null",
        dest="freeze_null",
        action="store_const",
        const=True,
        help="insertions do not update the matrix",
    )
    p_induce.add_argument("--path-mode", dest="path_mode", choices=list(orthography.PATH_MODES))
    p_induce.add_argument("--seed", type=int)
    p_induce.add_argument("--out-lexicon", dest="out_lexicon", help="lexicon TSV output path")
    p_induce.add_argument("--out-report", dest="out_report", help="run report JSON output path")
    p_induce.add_argument("--out-rulebook", dest="out_rulebook", help="matrix dump output path")
    p_induce.set_defaults(func=cmd_induce)

    p_eval = sub.add_parser("evaluate", help="score a lexicon against a silver lexicon")
    add_common(p_eval)
    p_eval.add_argument(
        "--out-lexicon", dest="out_lexicon", help="lexicon TSV to score (as written by induce)"
    )
    p_eval.add_argument("--silver", help="silver lexicon TSV")
    p_eval.add_argument("--k", help="comma-separated cutoffs, default 1,2,3,5")
    p_eval.add_argument("--out-report", dest="out_report", help="metrics JSON output path")
    p_eval.set_defaults(func=cmd_evaluate)

    p_base = sub.add_parser("baseline-id", help="score the copy baseline")
    add_common(p_base)
    p_base.add_argument("--silver", help="silver lexicon TSV")
    p_base.add_argument("--k", help="comma-separated cutoffs, default 1,2,3,5")
    p_base.add_argument("--out-report", dest="out_report", help="metrics JSON output path")
    p_base.set_defaults(func=cmd_baseline_id)

    p_inspect = sub.add_parser("rulebook-inspect", help="inspect a matrix dump")
    add_common(p_inspect)
    p_inspect.add_argument(
        "--out-rulebook", dest="out_rulebook", help="matrix dump TSV (as written by induce)"
    )
    p_inspect.add_argument("--source-char", dest="source_char", help="show one row only")
    p_inspect.add_argument("--top", type=int, help="rows to show, default 10")
    p_inspect.set_defaults(func=cmd_rulebook_inspect)

    p_mock = sub.add_parser("mock-oracle-gen", help="build a unigram mock oracle table")
    add_common(p_mock)
    p_mock.add_argument("--corpus", help="target-language corpus for unigram counts")
    p_mock.add_argument("--mock-table", dest="mock_table", help="output table path")
    p_mock.add_argument("--top-k", dest="top_k", type=int, help="fallback list length")
    p_mock.set_defaults(func=cmd_mock_oracle_gen)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except oracle.OracleUnavailableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE


if __name__ == "__main__":
    sys.exit(main())
