"""Bilingual lexicon induction for closely related language pairs.

Given a source-language corpus, a target-language vocabulary, and a
mask-fill oracle over the target language, the induction loop proposes
target-side equivalents for unknown source words and accepts the ones
that look orthographically close, either by plain normalized edit
distance (basic) or by a learned character-substitution matrix
(rulebook).  Induced lexicons are evaluated with P@k, non-identical
accuracy, and coverage against a silver reference.
"""

from .evaluation import (
    EvalResult,
    coverage,
    evaluate,
    format_results,
    identity_baseline,
    identity_predictions,
    load_silver,
    nia_at_k,
    precision_at_k,
    results_to_json,
)
from .induction import (
    InductionConfig,
    InductionState,
    Outcome,
    PassCounts,
    RunReport,
    process_example,
    replace_known_words,
    run_induction,
)
from .lexicon import (
    Equivalent,
    Lexicon,
    LexiconEntry,
    LexiconMeta,
    best_equivalent,
    export_lexicon,
    load_lexicon,
    update_lexicon,
    write_lexicon,
)
from .oracle import (
    MASK_TOKEN,
    Candidate,
    CandidateSet,
    HttpOracle,
    MaskQuery,
    MockOracle,
    OracleError,
    OracleProtocolError,
    OracleUnavailableError,
    load_mock_table,
    mask_fill,
    unigram_fallback,
    write_mock_table,
)
from .orthography import (
    BASIC,
    MATRIX_OPTIMAL,
    NULL,
    NULL_LABEL,
    RULEBOOK,
    UNIT_COST,
    EditOp,
    RankedCandidate,
    Ranking,
    RulebookMatrix,
    dump_rulebook,
    init_rulebook,
    levenshtein,
    load_rulebook_rows,
    min_edit_ops,
    normalized_similarity,
    pair_score,
    rank_candidates,
    script_cost,
    write_rulebook,
)
from .scheduler import (
    ExampleQueue,
    KnownSet,
    Sentence,
    WorkItem,
    build_queue,
    is_punctuation,
    known_fraction,
    load_corpus,
    load_vocabulary,
    reprioritize,
    tokenize,
)

__version__ = "0.1.0"
