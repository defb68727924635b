"""Tokenization, corpus/vocabulary loading, and queue ordering."""

from __future__ import annotations

import pytest

from lexforge.lexicon import Lexicon
from lexforge.scheduler import (
    ExampleQueue,
    KnownSet,
    Sentence,
    build_queue,
    is_punctuation,
    known_fraction,
    load_corpus,
    load_vocabulary,
    reprioritize,
    tokenize,
)

DANDA = "।"


def make_known(*vocab: str, lexicon: Lexicon | None = None) -> KnownSet:
    return KnownSet(set(vocab), lexicon or Lexicon())


# --- tokenization -----------------------------------------------------------


def test_tokenize_detaches_danda():
    line = "राम घर गइल।"
    sentence = tokenize(line)
    assert sentence is not None
    assert sentence.tokens == (
        "राम",
        "घर",
        "गइल",
        DANDA,
    )


def test_tokenize_detaches_ascii_punctuation():
    sentence = tokenize('"hello," she said.')
    assert sentence.tokens == ('"', "hello", ",", '"', "she", "said", ".")


def test_tokenize_splits_hyphens():
    assert tokenize("well-known word").tokens == ("well", "-", "known", "word")


def test_tokenize_blank_lines_yield_nothing():
    assert tokenize("") is None
    assert tokenize("   \t ") is None


def test_tokenize_applies_nfc():
    decomposed = "gáo"  # a + combining acute
    composed = "gáo"
    assert tokenize(decomposed).tokens == (composed,)


def test_sentence_validation():
    with pytest.raises(ValueError):
        Sentence((), ("d", 1))
    with pytest.raises(ValueError):
        Sentence(("a b",), ("d", 1))
    with pytest.raises(ValueError):
        Sentence(("",), ("d", 1))


def test_is_punctuation():
    assert is_punctuation(DANDA)
    assert is_punctuation(".")
    assert is_punctuation('"')
    assert not is_punctuation("word")
    assert not is_punctuation("a.b")


# --- file loading --------------------------------------------------------------


def test_load_corpus_numbers_lines_and_skips_blanks(tmp_path):
    path = tmp_path / "corpus.txt"
    path.write_text("ram ghar gail.\n\nu khet me bate\n", encoding="utf-8")
    sentences = load_corpus(str(path), document="doc")
    assert [s.source_id for s in sentences] == [("doc", 1), ("doc", 3)]
    assert sentences[0].tokens == ("ram", "ghar", "gail", ".")


def test_load_corpus_defaults_document_to_path(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("ek do\n", encoding="utf-8")
    assert load_corpus(str(path))[0].source_id == (str(path), 1)


def test_load_vocabulary_formats(tmp_path):
    path = tmp_path / "vocab.tsv"
    path.write_text("ghar\t10\nram\nghar\t5\nkam\t1\n", encoding="utf-8")
    vocab = load_vocabulary(str(path))
    assert vocab == {"ghar": 15, "ram": 1, "kam": 1}
    assert load_vocabulary(str(path), min_frequency=2) == {"ghar": 15}


def test_load_vocabulary_rejects_malformed_lines(tmp_path):
    bad_freq = tmp_path / "v1.tsv"
    bad_freq.write_text("ghar\tmany\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_vocabulary(str(bad_freq))
    extra_cols = tmp_path / "v2.tsv"
    extra_cols.write_text("a\t1\t2\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_vocabulary(str(extra_cols))


# --- known words ------------------------------------------------------------------


def test_known_set_sources():
    lex = Lexicon()
    lex.update("gail", "gayl", 0.8, 1)
    known = KnownSet({"ghar"}, lex)
    assert known.is_known("ghar")  # vocabulary
    assert known.is_known("gail")  # lexicon
    assert known.is_known(DANDA)  # punctuation
    assert known.is_known(".")
    assert not known.is_known("naya")


def test_known_fraction():
    sentence = tokenize("ghar me gail.", ("d", 1))
    known = make_known("ghar", "me")
    # ghar, me, "." known; gail unknown
    assert known_fraction(sentence, known) == pytest.approx(0.75)


# --- queue construction --------------------------------------------------------------


def test_build_queue_one_item_per_unknown_type():
    known = make_known("ghar")
    sentences = [
        tokenize("ghar naya gail.", ("d", 1)),
        tokenize("naya gail naya", ("d", 2)),
    ]
    queue = build_queue(sentences, known)
    assert queue.words() == ["gail", "naya"]
    assert len(queue) == 2


def test_build_queue_prefers_most_known_context():
    known = make_known("ghar", "me", "raha")
    hard = tokenize("naya gail bate", ("d", 1))  # 0/3 known
    easy = tokenize("ghar me naya raha.", ("d", 2))  # 4/5 known
    queue = build_queue([hard, easy], known)
    item = next(i for i in queue._items.values() if i.word == "naya")
    assert item.sentence.source_id == ("d", 2)


def test_context_tie_breaks_by_source_id_then_index():
    known = make_known("ghar")
    s1 = tokenize("naya ghar", ("d", 1))
    s2 = tokenize("ghar naya", ("d", 2))  # same known fraction
    queue = build_queue([s2, s1], known)
    item = queue._items["naya"]
    assert item.sentence.source_id == ("d", 1)
    assert item.word_index == 0


def test_next_example_orders_by_other_unknown_fraction():
    known = make_known("ghar", "me", "ek")
    # "naya" sits among 3/4 unknown neighbors; "gail" among 1/4
    noisy = tokenize("naya foo bar ghar baz", ("d", 1))
    clean = tokenize("gail ghar me ek foo", ("d", 2))
    queue = build_queue([noisy], known)
    for word, occ in build_queue([clean], known)._occurrences.items():
        queue.add_occurrences(word, occ)
    first = queue.next_example()
    assert first.word == "gail"
    assert first.other_unknown_fraction == pytest.approx(0.25)


def test_next_example_prioritizes_fewer_passes():
    known = make_known("ghar")
    queue = build_queue([tokenize("aaa ghar", ("d", 1)), tokenize("bbb ghar", ("d", 2))], known)
    first = queue.next_example()
    assert first.word == "aaa"
    first.times_processed += 1
    assert queue.next_example().word == "bbb"
    queue._items["bbb"].times_processed += 1
    # both at one pass: back to source-id order
    assert queue.next_example().word == "aaa"


def test_word_index_breaks_final_ties():
    known = make_known()
    sentence = tokenize("xx yy", ("d", 1))
    queue = build_queue([sentence], known)
    # both types occur once in the same sentence with equal fractions
    assert queue.next_example().word == "xx"


def test_next_example_skips_exhausted_items():
    known = make_known("ghar")
    queue = build_queue([tokenize("aaa ghar", ("d", 1))], known, max_passes=2)
    queue._items["aaa"].times_processed = 2
    assert queue.next_example() is None


def test_reprioritize_drops_learned_words_and_reselects_context():
    lex = Lexicon()
    known = KnownSet({"ghar"}, lex)
    s1 = tokenize("naya foo ghar", ("d", 1))
    s2 = tokenize("naya bar bar bar", ("d", 2))
    queue = build_queue([s1, s2], known)
    assert queue._items["naya"].sentence.source_id == ("d", 1)
    # learning "bar" makes sentence 2 the better context; "foo" leaves the queue
    lex.update("bar", "ber", 0.9, 1)
    lex.update("foo", "fu", 0.9, 1)
    queue._items["naya"].times_processed = 1
    reprioritize(queue)
    assert "foo" not in queue.words()
    item = queue._items["naya"]
    assert item.sentence.source_id == ("d", 2)
    assert item.times_processed == 1  # preserved
    assert item.other_unknown_fraction == 0.0


def test_remove():
    known = make_known()
    queue = build_queue([tokenize("aa bb", ("d", 1))], known)
    queue.remove("aa")
    assert queue.words() == ["bb"]


def test_queue_completeness(planted):
    known = KnownSet(planted.vocabulary, Lexicon())
    queue = build_queue(planted.sentences, known)
    expected = set()
    for sentence in planted.sentences:
        for token in sentence.tokens:
            if not known.is_known(token):
                expected.add(token)
    assert set(queue.words()) == expected
    assert expected == set(planted.truths)  # exactly the transformed twins
