"""End-to-end lexicon induction on a miniature twin-language corpus.

Builds a small synthetic setup in memory — a target-language vocabulary,
a source-language corpus derived from it by two character substitutions
(b -> p, d -> t), and a mask-fill oracle that knows the true word behind
every slot — then runs both rerankers and scores the induced lexicons
against the known truth.

Any object with a mask_fill(MaskQuery) -> CandidateSet method can serve
as the oracle; the one below answers from the sentence plan instead of a
live model, which keeps the demo offline and deterministic.

Run:  python3 demos/03_end_to_end_induction.py
"""

from __future__ import annotations

import random

from lexforge import (
    CandidateSet,
    InductionConfig,
    MaskQuery,
    evaluate,
    format_results,
    identity_baseline,
    run_induction,
    tokenize,
)

RULES = {"b": "p", "d": "t"}  # target char -> source char
NEUTRAL = "aeiou" + "fghklmnrsvw"


def build_world(seed: int = 11, vocab_size: int = 60, n_sentences: int = 120):
    """Vocabulary, twin corpus, truth maps for oracle and scoring."""
    rng = random.Random(seed)
    table = str.maketrans(RULES)
    vocab: list[str] = []
    seen: set[str] = set()
    while len(vocab) < vocab_size:
        word = "".join(rng.choice(NEUTRAL) for _ in range(5))
        if len(vocab) % 2 == 0:  # half the vocabulary carries a rule character
            chars = list(word)
            chars[rng.randrange(5)] = rng.choice("bd")
            word = "".join(chars)
        twin = word.translate(table)
        if word in seen or twin in seen:
            continue
        vocab.append(word)
        seen.update((word, twin))

    truths = {w.translate(table): w for w in vocab if any(c in "bd" for c in w)}

    sentences = []
    truth_at: dict[tuple[str, int], str] = {}
    for i in range(n_sentences):
        picks = [vocab[(2 * i + j) % vocab_size] for j in range(2)]
        picks += [vocab[rng.randrange(vocab_size)] for _ in range(3)]
        anchor = f"loc{i:03d}"
        line = anchor + " " + " ".join(w.translate(table) for w in picks) + " ."
        sentence = tokenize(line, ("demo", i + 1))
        assert sentence is not None
        sentences.append(sentence)
        for pos, truth in enumerate(picks, start=1):
            truth_at[(anchor, pos)] = truth

    known = set(vocab) | {f"loc{i:03d}" for i in range(n_sentences)}
    return vocab, truths, sentences, known, truth_at


class PlannedOracle:
    """Answers each masked slot with the planned word plus two distractors.

    Keyed on (anchor token, mask position), so answers stay valid even
    after the induction loop rewrites learned words into the context.
    """

    def __init__(self, vocab: list[str], truth_at: dict[tuple[str, int], str]) -> None:
        self.vocab = vocab
        self.truth_at = truth_at

    def mask_fill(self, query: MaskQuery) -> CandidateSet:
        truth = self.truth_at.get((query.tokens[0], query.mask_index))
        if truth is None:
            return CandidateSet([])
        rng = random.Random(f"{query.tokens[0]}:{query.mask_index}")
        distractors = rng.sample([v for v in self.vocab if v != truth], 2)
        words = [truth, *distractors]
        return CandidateSet([(w, 1.0 / r) for r, w in enumerate(words, start=1)], top_k=query.top_k)


def main() -> None:
    vocab, truths, sentences, known, truth_at = build_world()
    print(f"vocabulary: {len(vocab)} target types, {len(truths)} transformed twins")
    print(f"corpus: {len(sentences)} sentences")

    silver = {twin: [truth] for twin, truth in truths.items()}

    for reranker in ("basic", "rulebook"):
        print(f"\n== induction with the {reranker} reranker ==")
        oracle = PlannedOracle(vocab, truth_at)
        config = InductionConfig(reranker=reranker)
        lexicon, matrix, report = run_induction(sentences, known, oracle, config)
        totals = report.totals()
        print(f"  queue: {report.queue_initial} unknown types")
        print(f"  processed {totals.items_processed} examples, learned {len(lexicon.entries)}")
        print(f"  wall time {report.wall_time_s:.2f}s")

        predictions = lexicon.predictions()
        print("\n" + format_results(evaluate(predictions, silver, ks=(1, 2))))

        if matrix is not None:
            print("\n  strongest learned substitutions:")
            cells = [
                (a, b, prob)
                for a, b, _count, prob in matrix.rows()
                if a is not None and b is not None and a != b and prob > 0.3
            ]
            for a, b, prob in sorted(cells, key=lambda c: -c[2])[:4]:
                print(f"    {a} -> {b}  S = {prob:.3f}")

    print("\n== identity baseline for comparison ==")
    print(format_results(identity_baseline(silver, ks=(1, 2))))


if __name__ == "__main__":
    main()
