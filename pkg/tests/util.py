"""Shared test helpers: independent reference implementations and the
synthetic twin-language fixture.

brute_lev is the reference edit-distance oracle the production code is
checked against; it is a memoized recursion, deliberately written in a
different style from the library's iterative DP.
"""

from __future__ import annotations

import functools
import random
import zlib
from dataclasses import dataclass, field

from lexforge.oracle import CandidateSet, MaskQuery
from lexforge.orthography import DELETE, INSERT, RETAIN, SUBSTITUTE, EditOp
from lexforge.scheduler import Sentence, tokenize


def brute_lev(a: str, b: str) -> int:
    """Reference edit distance: plain memoized recursion."""

    @functools.lru_cache(maxsize=None)
    def go(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        return min(
            go(i - 1, j) + 1,
            go(i, j - 1) + 1,
            go(i - 1, j - 1) + (a[i - 1] != b[j - 1]),
        )

    return go(len(a), len(b))


def apply_ops(source: str, ops: list[EditOp]) -> str:
    """Replay an edit script over source, checking it consumes it exactly."""
    out: list[str] = []
    i = 0
    for op in ops:
        if op.kind in (RETAIN, SUBSTITUTE):
            assert source[i] == op.source_char, (op, source, i)
            out.append(op.target_char)
            i += 1
        elif op.kind == DELETE:
            assert source[i] == op.source_char, (op, source, i)
            i += 1
        elif op.kind == INSERT:
            out.append(op.target_char)
        else:
            raise AssertionError(f"unknown op {op!r}")
    assert i == len(source), f"script consumed {i} of {len(source)} source chars"
    return "".join(out)


def non_retain_count(ops: list[EditOp]) -> int:
    return sum(1 for op in ops if op.kind != RETAIN)


# --- synthetic twin-language corpus ----------------------------------------
#
# A source-language corpus is derived from a synthetic target-language
# vocabulary by applying five fixed character substitutions to half of the
# word types.  The oracle answers each masked slot with the true target
# word plus nine distractors drawn far away from it (edit distance >= 5),
# so the true pair (similarity >= 2/3) is the only candidate that can pass
# a 0.5 similarity gate.

RULES: list[tuple[str, str]] = [
    ("p", "b"),
    ("t", "d"),
    ("k", "g"),
    ("s", "z"),
    ("m", "n"),
]  # (source-language char, target-language char)

_HRL_RULE_CHARS = "bdgzn"
_NEUTRAL = "aeioucfhjlrvwxy"  # disjoint from both sides of the rules
_TABLE = str.maketrans({hrl: lrl for lrl, hrl in RULES})


@dataclass
class Planted:
    hrl_vocab: list[str]  # 300 target-language types
    twins: dict[str, str]  # target word -> its transformed source-language twin
    truths: dict[str, str]  # source-language twin -> target word
    sentences: list[Sentence]  # tokenized source-language corpus
    raw_lines: list[str]  # the corpus as text lines
    truth_at: dict[tuple[str, int], str]  # (anchor, position) -> true target word
    vocabulary: set[str]  # known target-language words incl. anchors

    @property
    def rules(self) -> list[tuple[str, str]]:
        return list(RULES)


def build_planted(
    seed: int = 7,
    vocab_size: int = 300,
    transformed_count: int = 150,
    sentence_count: int = 500,
    word_len: int = 6,
) -> Planted:
    rng = random.Random(seed)
    vocab: list[str] = []
    twins: dict[str, str] = {}
    taken: set[str] = set()
    while len(vocab) < vocab_size:
        transformed = len(vocab) < transformed_count
        chars = [rng.choice(_NEUTRAL) for _ in range(word_len)]
        if transformed:
            k = len(vocab)
            rule_chars = [_HRL_RULE_CHARS[k % 5]]
            if k % 3 == 0:
                rule_chars.append(_HRL_RULE_CHARS[(k // 5) % 5])
            for pos, rc in zip(rng.sample(range(word_len), len(rule_chars)), rule_chars):
                chars[pos] = rc
        word = "".join(chars)
        twin = word.translate(_TABLE)
        if word in taken or twin in taken or (transformed and twin == word):
            continue
        vocab.append(word)
        taken.add(word)
        if transformed:
            twins[word] = twin
            taken.add(twin)

    source_form = {w: twins.get(w, w) for w in vocab}
    raw_lines: list[str] = []
    sentences: list[Sentence] = []
    truth_at: dict[tuple[str, int], str] = {}
    anchors: set[str] = set()
    for i in range(sentence_count):
        anchor = f"loc{i:04d}"
        anchors.add(anchor)
        picks = [vocab[(3 * i + j) % vocab_size] for j in range(3)]
        picks += [vocab[rng.randrange(vocab_size)] for _ in range(4)]
        line = anchor + " " + " ".join(source_form[w] for w in picks) + " ."
        raw_lines.append(line)
        sentence = tokenize(line, ("planted", i + 1))
        assert sentence is not None
        sentences.append(sentence)
        for pos, w in enumerate(picks, start=1):
            truth_at[(anchor, pos)] = w

    return Planted(
        hrl_vocab=vocab,
        twins=twins,
        truths={twin: word for word, twin in twins.items()},
        sentences=sentences,
        raw_lines=raw_lines,
        truth_at=truth_at,
        vocabulary=set(vocab) | anchors,
    )


class PlantedOracle:
    """Answers each masked slot with the true target word plus 9 distractors.

    Distractors sit at edit distance >= 5 from the true word, so no
    distractor can outscore the true pair or clear a 0.5 gate.  Answers
    are a pure function of (anchor token, mask position) and survive
    in-place sentence rewriting between passes.
    """

    def __init__(self, fixture: Planted) -> None:
        self.fixture = fixture
        self._pools: dict[str, list[str]] = {}
        self.calls = 0

    def _pool(self, truth: str) -> list[str]:
        pool = self._pools.get(truth)
        if pool is None:
            pool = [v for v in self.fixture.hrl_vocab if v != truth and brute_lev(v, truth) >= 5]
            assert len(pool) >= 9, f"thin distractor pool for {truth}"
            self._pools[truth] = pool
        return pool

    def mask_fill(self, query: MaskQuery) -> CandidateSet:
        self.calls += 1
        anchor = query.tokens[0]
        truth = self.fixture.truth_at.get((anchor, query.mask_index))
        if truth is None:
            return CandidateSet([])
        rng = random.Random(zlib.crc32(f"{anchor}:{query.mask_index}".encode()))
        pool = self._pool(truth)
        distractors = [pool[k] for k in rng.sample(range(len(pool)), 9)]
        candidates = distractors[:]
        candidates.insert(rng.randrange(10), truth)
        pairs = [(w, 1.0 / rank) for rank, w in enumerate(candidates, start=1)]
        return CandidateSet(pairs, top_k=query.top_k)


class RejectAllOracle:
    """Always answers with one word so unlike anything that no gate passes."""

    def __init__(self) -> None:
        self.calls: dict[tuple[tuple[str, ...], int], int] = {}

    def mask_fill(self, query: MaskQuery) -> CandidateSet:
        key = (query.tokens, query.mask_index)
        self.calls[key] = self.calls.get(key, 0) + 1
        return CandidateSet([("qqqqqqqqqqqq", 1.0)], top_k=query.top_k)


class FailingOracle:
    """Raises a transport failure on every query."""

    def __init__(self) -> None:
        self.calls = 0

    def mask_fill(self, query: MaskQuery) -> CandidateSet:
        from lexforge.oracle import OracleUnavailableError

        self.calls += 1
        raise OracleUnavailableError("synthetic outage")
