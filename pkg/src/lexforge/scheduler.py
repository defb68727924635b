"""Work scheduling: which unknown word gets mask-filled next.

The corpus is split into sentences (one per line) and whitespace tokens,
with common punctuation (danda included) detached into tokens of its own.
A word is known when it appears in the target-language vocabulary or the
induced lexicon; punctuation always counts as known.  Each unknown word
type yields one work item anchored at its best-context occurrence (the
sentence with the lowest fraction of unknown tokens), and items are served
in a deterministic priority order:

    times processed ascending,
    fraction of other unknown words in the sentence ascending,
    sentence id ascending, token position ascending.

Reprioritization reselects contexts and drops freshly learned words, so
easy sentences bootstrap harder ones across passes.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .lexicon import Lexicon

PUNCTUATION = set(".,!?;:\"'()-") | {"।", "॥"}  # ASCII marks plus danda, double danda

SourceId = tuple[str, int]


@dataclass(frozen=True)
class Sentence:
    """A tokenized corpus line with a stable (document, line) id."""

    tokens: tuple[str, ...]
    source_id: SourceId

    def __post_init__(self) -> None:
        if not self.tokens:
            raise ValueError("sentences must have at least one token")
        for token in self.tokens:
            if not token or any(ch.isspace() for ch in token):
                raise ValueError(f"bad token {token!r} in {self.source_id}")


def is_punctuation(token: str) -> bool:
    return all(ch in PUNCTUATION for ch in token)


def tokenize(line: str, source_id: SourceId = ("", 0)) -> Sentence | None:
    """Split a corpus line into tokens, detaching punctuation.

    Punctuation characters become separate tokens wherever they touch a
    word.  Lines with no tokens yield None.  Text is NFC-normalized.
    """
    line = unicodedata.normalize("NFC", line)
    padded = []
    for ch in line:
        if ch in PUNCTUATION:
            padded.append(f" {ch} ")
        else:
            padded.append(ch)
    tokens = "".join(padded).split()
    if not tokens:
        return None
    return Sentence(tuple(tokens), source_id)


def load_corpus(path: str, document: str | None = None) -> list[Sentence]:
    """Read a one-sentence-per-line corpus file.

    Sentence ids are (document, line number), lines numbered from 1; the
    document label defaults to the path.  Blank lines are skipped.
    """
    label = path if document is None else document
    sentences: list[Sentence] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            sentence = tokenize(line.rstrip("\n"), (label, lineno))
            if sentence is not None:
                sentences.append(sentence)
    return sentences


def load_vocabulary(path: str, min_frequency: int = 1) -> dict[str, int]:
    """Read a vocabulary file: one word per line, optional TAB frequency.

    Bare words get frequency 1.  Words below min_frequency are dropped.
    Repeated words accumulate their frequencies.  NFC-normalized.
    """
    freqs: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = unicodedata.normalize("NFC", line.rstrip("\n"))
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) == 1:
                word, freq = parts[0], 1
            elif len(parts) == 2:
                word = parts[0]
                try:
                    freq = int(parts[1])
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: bad frequency {parts[1]!r}") from exc
            else:
                raise ValueError(f"{path}:{lineno}: expected 1 or 2 columns")
            if not word:
                raise ValueError(f"{path}:{lineno}: empty word")
            freqs[word] = freqs.get(word, 0) + freq
    return {word: freq for word, freq in freqs.items() if freq >= min_frequency}


class KnownSet:
    """Union view of the target-language vocabulary and the lexicon."""

    def __init__(self, hrl_vocabulary: Iterable[str], lexicon: Lexicon) -> None:
        self.hrl_vocabulary = set(hrl_vocabulary)
        self.lexicon = lexicon

    def is_known(self, token: str) -> bool:
        """Vocabulary and punctuation count as known, then the lexicon."""
        return (
            is_punctuation(token)
            or token in self.hrl_vocabulary
            or self.lexicon.best_equivalent(token) is not None
        )


def known_fraction(sentence: Sentence, known: KnownSet) -> float:
    """Fraction of the sentence's tokens that are currently known."""
    hits = sum(1 for token in sentence.tokens if known.is_known(token))
    return hits / len(sentence.tokens)


@dataclass
class WorkItem:
    """One unknown word type, anchored at its best-context occurrence."""

    sentence: Sentence
    word_index: int
    times_processed: int = 0
    other_unknown_fraction: float = 0.0

    @property
    def word(self) -> str:
        return self.sentence.tokens[self.word_index]

    def sort_key(self) -> tuple:
        return (
            self.times_processed,
            self.other_unknown_fraction,
            self.sentence.source_id,
            self.word_index,
        )


def _other_unknown_fraction(sentence: Sentence, word_index: int, known: KnownSet) -> float:
    """Unknown-token fraction over the positions other than word_index."""
    others = len(sentence.tokens) - 1
    if others == 0:
        return 0.0
    unknown = sum(
        1
        for i, token in enumerate(sentence.tokens)
        if i != word_index and not known.is_known(token)
    )
    return unknown / others


def _best_occurrence(
    occurrences: list[tuple[Sentence, int]], known: KnownSet
) -> tuple[Sentence, int]:
    """Occurrence in the sentence with the lowest unknown fraction.

    Ties go to the lowest sentence id, then the lowest token position.
    """
    return min(
        occurrences,
        key=lambda occ: (1.0 - known_fraction(occ[0], known), occ[0].source_id, occ[1]),
    )


class ExampleQueue:
    """Priority queue of unknown word types over the corpus."""

    def __init__(self, known: KnownSet, max_passes: int = 3) -> None:
        self.known = known
        self.max_passes = max_passes
        self._occurrences: dict[str, list[tuple[Sentence, int]]] = {}
        self._items: dict[str, WorkItem] = {}

    def __len__(self) -> int:
        return len(self._items)

    def words(self) -> list[str]:
        return sorted(self._items)

    def _select(self, word: str, times_processed: int = 0) -> WorkItem:
        sentence, index = _best_occurrence(self._occurrences[word], self.known)
        return WorkItem(
            sentence,
            index,
            times_processed,
            _other_unknown_fraction(sentence, index, self.known),
        )

    def add_occurrences(self, word: str, occurrences: list[tuple[Sentence, int]]) -> None:
        self._occurrences[word] = list(occurrences)
        self._items[word] = self._select(word)

    def next_example(self) -> WorkItem | None:
        """Minimum-key live item, or None when every item is exhausted."""
        live = [item for item in self._items.values() if item.times_processed < self.max_passes]
        if not live:
            return None
        return min(live, key=WorkItem.sort_key)

    def remove(self, word: str) -> None:
        self._items.pop(word, None)
        self._occurrences.pop(word, None)

    def reprioritize(self) -> None:
        """Refresh the queue against the current known set.

        Words that became known are dropped; surviving items re-select
        their best context and recompute ordering fractions, keeping their
        processing counts.
        """
        for word in list(self._items):
            if self.known.is_known(word):
                self.remove(word)
                continue
            self._items[word] = self._select(word, self._items[word].times_processed)


def build_queue(
    sentences: Iterable[Sentence], known: KnownSet, max_passes: int = 3
) -> ExampleQueue:
    """Collect one work item per unknown word type across the corpus."""
    queue = ExampleQueue(known, max_passes)
    occurrences: dict[str, list[tuple[Sentence, int]]] = {}
    for sentence in sentences:
        for index, token in enumerate(sentence.tokens):
            if known.is_known(token):
                continue
            occurrences.setdefault(token, []).append((sentence, index))
    for word in occurrences:
        queue.add_occurrences(word, occurrences[word])
    return queue


def reprioritize(queue: ExampleQueue) -> ExampleQueue:
    queue.reprioritize()
    return queue
