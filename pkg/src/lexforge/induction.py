"""The induction loop: grow a bilingual lexicon by iterative mask filling.

Each round takes the highest-priority unknown word, rewrites its sentence
by substituting already-learned equivalents for other known words, masks
the target slot, and asks the oracle for candidates.  Candidates are
reranked orthographically; the best non-identical candidate is accepted
when its basic similarity clears the gate threshold (strictly greater
than, under either reranker, so both rerankers admit the same pairs and
differ only in ranking).  A candidate identical to the source word is
recorded as an identity entry.  Under the rulebook reranker every
accepted non-identical pair also feeds a maximization update into the
substitution matrix.

Every work item is attempted at most max_passes times; learned words
leave the queue, and periodic reprioritization lets freshly learned
words improve the context of the remaining ones.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .lexicon import Lexicon, LexiconMeta
from .oracle import MASK_TOKEN, MaskQuery, Oracle, OracleUnavailableError
from .orthography import (
    BASIC,
    PATH_MODES,
    RERANKERS,
    RULEBOOK,
    UNIT_COST,
    RulebookMatrix,
    min_edit_ops,
    rank_candidates,
)
from .scheduler import (
    ExampleQueue,
    KnownSet,
    Sentence,
    WorkItem,
    build_queue,
    is_punctuation,
)

log = logging.getLogger("lexforge.induction")

LEARNED = "learned"
IDENTITY = "identity"
REJECTED = "rejected"
ORACLE_EMPTY = "oracle-empty"


@dataclass
class InductionConfig:
    """Knobs of the induction loop.

    similarity_threshold  acceptance gate on basic similarity (strict >)
    max_passes            attempts per work item before it is retired
    top_k                 candidates requested per query
    batch_size            items between queue reprioritizations
    freeze_null           rulebook variant: insertions do not update
    path_mode             rulebook variant: unit or matrix-optimal scripts
    random_seed           seed for any sampling hooks; kept in the report
    """

    reranker: str = BASIC
    similarity_threshold: float = 0.5
    max_passes: int = 3
    top_k: int = 30
    batch_size: int = 100
    freeze_null: bool = False
    path_mode: str = UNIT_COST
    random_seed: int = 0

    def __post_init__(self) -> None:
        if self.reranker not in RERANKERS:
            raise ValueError(f"unknown reranker {self.reranker!r}")
        if not 0.0 < self.similarity_threshold <= 1.0:
            raise ValueError(f"threshold must be in (0, 1], got {self.similarity_threshold}")
        if self.max_passes < 1:
            raise ValueError(f"max_passes must be at least 1, got {self.max_passes}")
        if self.top_k < 1:
            raise ValueError(f"top_k must be at least 1, got {self.top_k}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be at least 1, got {self.batch_size}")
        if self.path_mode not in PATH_MODES:
            raise ValueError(f"unknown path mode {self.path_mode!r}")


@dataclass
class InductionState:
    """Mutable run state shared by the loop and per-example processing."""

    lexicon: Lexicon
    known: KnownSet
    rulebook: RulebookMatrix | None = None


@dataclass(frozen=True)
class Outcome:
    """What one processed example produced.

    kind is learned, identity, rejected, or oracle-empty.  learned means
    a non-identical pair passed the gate (an identity hit may have been
    recorded in the same step; identity_recorded says so).  gate_rejected
    marks steps whose best non-identical candidate failed the gate.
    """

    kind: str
    source: str
    target: str | None = None
    similarity: float | None = None
    identity_recorded: bool = False
    gate_rejected: bool = False


@dataclass
class PassCounts:
    items_processed: int = 0
    entries_added: int = 0
    identity_hits: int = 0
    gate_rejections: int = 0
    oracle_failures: int = 0
    oracle_empty: int = 0


@dataclass
class RunReport:
    """Per-pass counters plus run-level facts, serializable to JSON."""

    passes: dict[int, PassCounts] = field(default_factory=dict)
    queue_initial: int = 0
    lexicon_size: int = 0
    wall_time_s: float = 0.0
    config: dict = field(default_factory=dict)

    def pass_counts(self, pass_number: int) -> PassCounts:
        counts = self.passes.get(pass_number)
        if counts is None:
            counts = PassCounts()
            self.passes[pass_number] = counts
        return counts

    def totals(self) -> PassCounts:
        total = PassCounts()
        for counts in self.passes.values():
            total.items_processed += counts.items_processed
            total.entries_added += counts.entries_added
            total.identity_hits += counts.identity_hits
            total.gate_rejections += counts.gate_rejections
            total.oracle_failures += counts.oracle_failures
            total.oracle_empty += counts.oracle_empty
        return total

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "passes": {str(n): vars(self.passes[n]) for n in sorted(self.passes)},
            "totals": vars(self.totals()),
            "queue_initial": self.queue_initial,
            "lexicon_size": self.lexicon_size,
            "wall_time_s": round(self.wall_time_s, 3),
        }


def replace_known_words(sentence: Sentence, lexicon: Lexicon, known: KnownSet) -> Sentence:
    """Substitute learned equivalents into a sentence.

    Tokens already in the target-language vocabulary and punctuation stay
    as they are (vocabulary wins over the lexicon); other tokens with a
    lexicon entry are replaced by their best equivalent.
    """
    tokens = []
    for token in sentence.tokens:
        if is_punctuation(token) or token in known.hrl_vocabulary:
            tokens.append(token)
            continue
        equivalent = lexicon.best_equivalent(token)
        tokens.append(equivalent if equivalent is not None else token)
    return Sentence(tuple(tokens), sentence.source_id)


def process_example(
    item: WorkItem, state: InductionState, oracle: Oracle, config: InductionConfig
) -> Outcome:
    """Run one work item through mask fill, reranking, and the gate.

    The item's times_processed is incremented on every outcome.  Oracle
    transport failures propagate without incrementing; the loop requeues
    the item itself.
    """
    source = item.word
    pass_number = item.times_processed + 1
    working = replace_known_words(item.sentence, state.lexicon, state.known)
    masked = list(working.tokens)
    masked[item.word_index] = MASK_TOKEN
    query = MaskQuery(tuple(masked), item.word_index, config.top_k)
    candidates = oracle.mask_fill(query)  # may raise OracleUnavailableError
    item.times_processed += 1

    if not candidates:
        return Outcome(ORACLE_EMPTY, source)

    ranking = rank_candidates(
        source,
        candidates,
        reranker=config.reranker,
        matrix=state.rulebook,
        path_mode=config.path_mode,
    )
    if ranking.identity_hit:
        state.lexicon.update(source, source, 1.0, pass_number)

    best = ranking.best
    if best is not None and best.similarity > config.similarity_threshold:
        state.lexicon.update(source, best.word, best.similarity, pass_number)
        if config.reranker == RULEBOOK:
            assert state.rulebook is not None
            ops = min_edit_ops(source, best.word, mode=config.path_mode, matrix=state.rulebook)
            state.rulebook.maximization_update(ops)
        return Outcome(
            LEARNED,
            source,
            target=best.word,
            similarity=best.similarity,
            identity_recorded=ranking.identity_hit,
        )
    gate_rejected = best is not None
    if ranking.identity_hit:
        return Outcome(IDENTITY, source, identity_recorded=True, gate_rejected=gate_rejected)
    return Outcome(REJECTED, source, gate_rejected=gate_rejected)


def corpus_charset(sentences: Iterable[Sentence]) -> set[str]:
    """Characters of all non-punctuation tokens."""
    chars: set[str] = set()
    for sentence in sentences:
        for token in sentence.tokens:
            if not is_punctuation(token):
                chars.update(token)
    return chars


def vocabulary_charset(words: Iterable[str]) -> set[str]:
    chars: set[str] = set()
    for word in words:
        chars.update(word)
    return chars


def run_induction(
    sentences: list[Sentence],
    hrl_vocabulary: Iterable[str],
    oracle: Oracle,
    config: InductionConfig | None = None,
) -> tuple[Lexicon, RulebookMatrix | None, RunReport]:
    """Induce a lexicon over the corpus with the given oracle.

    Returns the lexicon, the substitution matrix (None under the basic
    reranker), and a run report.  Deterministic for a deterministic
    oracle: queue order is total and candidate handling is order-stable.
    """
    config = config or InductionConfig()
    if not sentences:
        raise ValueError("empty corpus")
    vocabulary = set(hrl_vocabulary)
    if not vocabulary:
        raise ValueError("empty target-language vocabulary")

    lexicon = Lexicon(
        LexiconMeta(
            method=config.reranker,
            threshold=config.similarity_threshold,
            passes=config.max_passes,
        )
    )
    rulebook = None
    if config.reranker == RULEBOOK:
        rulebook = RulebookMatrix(
            corpus_charset(sentences),
            vocabulary_charset(vocabulary),
            freeze_null=config.freeze_null,
        )
    known = KnownSet(vocabulary, lexicon)
    state = InductionState(lexicon=lexicon, known=known, rulebook=rulebook)
    queue = build_queue(sentences, known, max_passes=config.max_passes)

    report = RunReport(queue_initial=len(queue), config=_config_dict(config))
    started = time.monotonic()
    since_reprioritize = 0
    while (item := queue.next_example()) is not None:
        counts = report.pass_counts(item.times_processed + 1)
        size_before = len(lexicon)
        try:
            outcome = process_example(item, state, oracle, config)
        except OracleUnavailableError as exc:
            item.times_processed += 1
            counts.items_processed += 1
            counts.oracle_failures += 1
            log.warning("oracle failure on %r: %s", item.word, exc)
        else:
            counts.items_processed += 1
            counts.entries_added += len(lexicon) - size_before
            counts.identity_hits += int(outcome.identity_recorded)
            counts.gate_rejections += int(outcome.gate_rejected)
            counts.oracle_empty += int(outcome.kind == ORACLE_EMPTY)
            if outcome.kind in (LEARNED, IDENTITY):
                queue.remove(outcome.source)
        since_reprioritize += 1
        if since_reprioritize >= config.batch_size:
            queue.reprioritize()
            since_reprioritize = 0
            log.info(
                "reprioritized: %d items left, %d lexicon entries", len(queue), len(lexicon)
            )

    report.lexicon_size = len(lexicon)
    report.wall_time_s = time.monotonic() - started
    log.info(
        "induction done: %d entries from %d initial items in %.2fs",
        len(lexicon),
        report.queue_initial,
        report.wall_time_s,
    )
    return lexicon, rulebook, report


def _config_dict(config: InductionConfig) -> dict:
    return {
        "reranker": config.reranker,
        "similarity_threshold": config.similarity_threshold,
        "max_passes": config.max_passes,
        "top_k": config.top_k,
        "batch_size": config.batch_size,
        "freeze_null": config.freeze_null,
        "path_mode": config.path_mode,
        "random_seed": config.random_seed,
    }
