"""Orthographic similarity between words of closely related languages.

Two rerankers are provided for scoring candidate word pairs:

* basic: normalized Levenshtein similarity, ``1 - distance / max(len)``,
  computed over Unicode scalar values.
* rulebook: a learned character-substitution matrix.  Rows are source
  characters, columns are target characters plus a NULL gap symbol.  Row
  counts are turned into conditional probabilities ``S(a, b) = C(a, b) /
  T(a)`` and a word pair is scored by the summed negative log-probability
  of the operations on a minimal edit script (lower is better).  Accepted
  pairs feed counts back into the matrix, so productive character
  correspondences become cheap over time.

The gap symbol NULL is represented as ``None`` in edit operations and
matrix keys, and rendered as ``<NULL>`` in dumps.
"""

from __future__ import annotations

import math
import unicodedata
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

NULL = None  # gap symbol for insertions/deletions
NULL_LABEL = "<NULL>"

RETAIN = "retain"
SUBSTITUTE = "substitute"
DELETE = "delete"
INSERT = "insert"

UNIT_COST = "unit"
MATRIX_OPTIMAL = "matrix"
PATH_MODES = (UNIT_COST, MATRIX_OPTIMAL)

BASIC = "basic"
RULEBOOK = "rulebook"
RERANKERS = (BASIC, RULEBOOK)


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance between two strings.

    Operates on Unicode scalar values; combining marks count as separate
    characters.  Runs in O(len(a) * len(b)) time with two rows of state.
    """
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i] + [0] * len(b)
        for j, cb in enumerate(b, start=1):
            cur[j] = min(
                prev[j] + 1,  # delete ca
                cur[j - 1] + 1,  # insert cb
                prev[j - 1] + (ca != cb),  # retain or substitute
            )
        prev = cur
    return prev[-1]


def normalized_similarity(a: str, b: str) -> float:
    """Length-normalized similarity in [0, 1].

    ``1 - levenshtein(a, b) / max(len(a), len(b))``.  Equal strings score
    1.0; disjoint equal-length strings score 0.0.

    Raises ValueError when both strings are empty (undefined ratio).
    """
    if not a and not b:
        raise ValueError("similarity undefined for two empty strings")
    return 1.0 - levenshtein(a, b) / max(len(a), len(b))


@dataclass(frozen=True)
class EditOp:
    """One aligned step of an edit script.

    kind         one of retain, substitute, delete, insert
    source_char  consumed source character, or None for insert
    target_char  produced target character, or None for delete
    """

    kind: str
    source_char: str | None
    target_char: str | None

    def __post_init__(self) -> None:
        if self.kind == RETAIN:
            ok = self.source_char is not None and self.source_char == self.target_char
        elif self.kind == SUBSTITUTE:
            ok = (
                self.source_char is not None
                and self.target_char is not None
                and self.source_char != self.target_char
            )
        elif self.kind == DELETE:
            ok = self.source_char is not None and self.target_char is NULL
        elif self.kind == INSERT:
            ok = self.source_char is NULL and self.target_char is not None
        else:
            ok = False
        if not ok:
            raise ValueError(f"inconsistent edit op: {self!r}")


class RulebookMatrix:
    """Character-substitution count matrix with pseudocount smoothing.

    Each source-side character ``a`` (plus NULL) owns a row over the
    target-side characters plus NULL.  A row starts as ``pseudocount``
    virtual observations: ``self_prob`` of the mass on the identity cell
    ``(a, a)`` and the rest spread evenly over the remaining cells.  A
    source character with no identity cell in the target space gets a
    uniform row.  Every accepted operation then adds one real count to its
    cell and one to the row total, so

        S(a, b) = C(a, b) / T(a)

    stays a proper distribution over each row (row sums are exactly 1) and
    strictly positive everywhere.

    Characters unseen at construction are added on the fly with the same
    init treatment; growing the target side re-spreads only the virtual
    init mass, never the observed counts.
    """

    def __init__(
        self,
        source_chars: Iterable[str],
        target_chars: Iterable[str],
        self_prob: float = 0.5,
        pseudocount: float = 1.0,
        freeze_null: bool = False,
    ) -> None:
        self.self_prob = float(self_prob)
        self.pseudocount = float(pseudocount)
        self.freeze_null = bool(freeze_null)
        if not 0.0 < self.self_prob < 1.0:
            raise ValueError(f"self_prob must be in (0, 1), got {self_prob}")
        if self.pseudocount <= 0.0:
            raise ValueError(f"pseudocount must be positive, got {pseudocount}")
        self.source_chars: set[str] = set(source_chars)
        self.target_chars: set[str] = set(target_chars)
        if not self.source_chars or not self.target_chars:
            raise ValueError("character sets must be non-empty")
        for c in self.source_chars | self.target_chars:
            if not isinstance(c, str) or len(c) != 1:
                raise ValueError(f"charset members must be single characters, got {c!r}")
        # Observed (real) operation counts, kept apart from the virtual
        # init mass so the init can be re-derived when charsets grow.
        self._observed: dict[tuple[str | None, str | None], int] = {}
        self._row_observed: dict[str | None, int] = {}

    # -- row bookkeeping ------------------------------------------------

    def _sources(self) -> list[str | None]:
        return [*sorted(self.source_chars), NULL]

    def _targets(self) -> list[str | None]:
        return [*sorted(self.target_chars), NULL]

    def _init_mass(self, a: str | None, b: str | None) -> float:
        """Virtual count the init distribution assigns to cell (a, b)."""
        size = len(self.target_chars) + 1  # target space includes NULL
        if a is NULL or a in self.target_chars:
            if b == a:
                return self.pseudocount * self.self_prob
            return self.pseudocount * (1.0 - self.self_prob) / (size - 1)
        return self.pseudocount / size

    def count(self, a: str | None, b: str | None) -> float:
        """C(a, b): virtual init mass plus observed operations."""
        return self._init_mass(a, b) + self._observed.get((a, b), 0)

    def total(self, a: str | None) -> float:
        """T(a): pseudocount plus observed operations out of row a."""
        return self.pseudocount + self._row_observed.get(a, 0)

    def _check_source(self, a: str | None) -> None:
        if a is not NULL and a not in self.source_chars:
            raise ValueError(f"unknown source character {a!r}")

    def _check_target(self, b: str | None) -> None:
        if b is not NULL and b not in self.target_chars:
            raise ValueError(f"unknown target character {b!r}")

    def substitution_score(self, a: str | None, b: str | None) -> float:
        """S(a, b) = C(a, b) / T(a), strictly inside (0, 1).

        Raises ValueError for characters outside the matrix; use
        ensure_chars (or the pair-level scorers, which call it) first.
        """
        self._check_source(a)
        self._check_target(b)
        return self.count(a, b) / self.total(a)

    def op_cost(self, kind: str, a: str | None, b: str | None) -> float:
        """Negative log-probability of one edit operation."""
        return -math.log(self.substitution_score(a, b))

    def ensure_chars(self, *words: str) -> None:
        """Register every character of the given words on both sides.

        New characters receive the init distribution; existing rows keep
        their observed counts and only re-spread virtual init mass over the
        enlarged target space.
        """
        for word in words:
            for c in word:
                self.source_chars.add(c)
                self.target_chars.add(c)

    # -- learning --------------------------------------------------------

    def maximization_update(self, ops: Iterable[EditOp]) -> None:
        """Add one observed count per operation: C(a, b) += 1, T(a) += 1.

        Insertions leave the matrix untouched when freeze_null is set.
        Characters unseen so far are registered first.  Retain operations
        count like any other (they reinforce the identity cell).
        """
        for op in ops:
            if self.freeze_null and op.source_char is NULL:
                continue
            if op.source_char is not NULL:
                self.source_chars.add(op.source_char)
                self.target_chars.add(op.source_char)
            if op.target_char is not NULL:
                self.target_chars.add(op.target_char)
                self.source_chars.add(op.target_char)
            key = (op.source_char, op.target_char)
            self._observed[key] = self._observed.get(key, 0) + 1
            self._row_observed[op.source_char] = self._row_observed.get(op.source_char, 0) + 1

    # -- inspection ------------------------------------------------------

    def rows(self) -> Iterator[tuple[str | None, str | None, float, float]]:
        """Yield (source_char, target_char, count, probability) for every cell.

        Ordered by rendered source label, then probability descending, then
        rendered target label, matching the dump file layout.
        """
        for a in sorted(self._sources(), key=_render):
            row = [(b, self.count(a, b), self.substitution_score(a, b)) for b in self._targets()]
            row.sort(key=lambda cell: (-cell[2], _render(cell[0])))
            for b, count, prob in row:
                yield a, b, count, prob


def _render(c: str | None) -> str:
    return NULL_LABEL if c is NULL else c


def init_rulebook(
    source_chars: Iterable[str],
    target_chars: Iterable[str],
    self_prob: float = 0.5,
    pseudocount: float = 1.0,
    freeze_null: bool = False,
) -> RulebookMatrix:
    """Build a fresh substitution matrix over the two character sets."""
    return RulebookMatrix(source_chars, target_chars, self_prob, pseudocount, freeze_null)


def min_edit_ops(
    source: str,
    target: str,
    mode: str = UNIT_COST,
    matrix: RulebookMatrix | None = None,
) -> list[EditOp]:
    """Minimal edit script turning source into target.

    In unit mode every non-retain operation costs 1 and retains cost 0, so
    the script's non-retain count equals levenshtein(source, target).  In
    matrix mode each operation costs its negative log-probability under the
    given matrix (retains included), yielding the cheapest alignment under
    the current model; unseen characters are registered first.

    Ties are broken retain > substitute > delete > insert during the
    backtrace, which keeps scripts deterministic and as short as possible.
    """
    if mode == UNIT_COST:
        cost = _unit_cost
    elif mode == MATRIX_OPTIMAL:
        if matrix is None:
            raise ValueError("matrix mode needs a RulebookMatrix")
        matrix.ensure_chars(source, target)
        cost = matrix.op_cost
    else:
        raise ValueError(f"unknown path mode {mode!r}")
    return _edit_script(source, target, cost)


def _unit_cost(kind: str, a: str | None, b: str | None) -> float:
    return 0.0 if kind == RETAIN else 1.0


def _edit_script(
    source: str,
    target: str,
    cost: Callable[[str, str | None, str | None], float],
) -> list[EditOp]:
    n, m = len(source), len(target)
    dist = [[0.0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dist[i][0] = dist[i - 1][0] + cost(DELETE, source[i - 1], NULL)
    for j in range(1, m + 1):
        dist[0][j] = dist[0][j - 1] + cost(INSERT, NULL, target[j - 1])
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            a, b = source[i - 1], target[j - 1]
            diag_kind = RETAIN if a == b else SUBSTITUTE
            best = dist[i - 1][j - 1] + cost(diag_kind, a, b)
            down = dist[i - 1][j] + cost(DELETE, a, NULL)
            if down < best:
                best = down
            left = dist[i][j - 1] + cost(INSERT, NULL, b)
            if left < best:
                best = left
            dist[i][j] = best

    # Backtrace re-derives which move produced each cell; candidate values
    # are recomputed with the same expressions, so float comparison is exact.
    ops: list[EditOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            a, b = source[i - 1], target[j - 1]
            kind = RETAIN if a == b else SUBSTITUTE
            if dist[i][j] == dist[i - 1][j - 1] + cost(kind, a, b):
                ops.append(EditOp(kind, a, b))
                i -= 1
                j -= 1
                continue
        if i > 0 and dist[i][j] == dist[i - 1][j] + cost(DELETE, source[i - 1], NULL):
            ops.append(EditOp(DELETE, source[i - 1], NULL))
            i -= 1
            continue
        ops.append(EditOp(INSERT, NULL, target[j - 1]))
        j -= 1
    ops.reverse()
    return ops


def script_cost(matrix: RulebookMatrix, ops: Iterable[EditOp]) -> float:
    """Summed negative log-probability of a script under the matrix."""
    return sum(matrix.op_cost(op.kind, op.source_char, op.target_char) for op in ops)


def pair_score(
    matrix: RulebookMatrix,
    source: str,
    target: str,
    mode: str = UNIT_COST,
) -> float:
    """Rulebook score of a word pair: script cost under the matrix.

    Finite and positive; lower is better.  The script is the unit-cost
    minimal one by default, or the matrix-optimal one in matrix mode.
    Unseen characters are registered with the init distribution.
    """
    if not source or not target:
        raise ValueError("pair_score needs non-empty words")
    matrix.ensure_chars(source, target)
    ops = min_edit_ops(source, target, mode=mode, matrix=matrix)
    return script_cost(matrix, ops)


@dataclass(frozen=True)
class RankedCandidate:
    """A non-identical candidate with its scores.

    similarity   basic reranker value (always computed; the acceptance
                 gate reads it under either reranker)
    zeta         rulebook script cost, present under the rulebook reranker
    """

    word: str
    similarity: float
    zeta: float | None = None


@dataclass(frozen=True)
class Ranking:
    """Reranked oracle output for one masked slot."""

    ranked: tuple[RankedCandidate, ...]
    identity_hit: bool

    @property
    def best(self) -> RankedCandidate | None:
        return self.ranked[0] if self.ranked else None


def rank_candidates(
    source: str,
    candidates: Iterable[tuple[str, float]],
    reranker: str = BASIC,
    matrix: RulebookMatrix | None = None,
    path_mode: str = UNIT_COST,
) -> Ranking:
    """Rerank oracle candidates for a source word by orthographic affinity.

    Candidates identical to the source are noted as an identity hit and
    excluded from the ranking.  Duplicated candidate words keep their first
    occurrence.  The basic reranker orders by similarity descending; the
    rulebook reranker orders by script cost ascending.  Ties fall back to
    lexicographic word order, so the result is deterministic.
    """
    if reranker not in RERANKERS:
        raise ValueError(f"unknown reranker {reranker!r}")
    if reranker == RULEBOOK and matrix is None:
        raise ValueError("rulebook reranking needs a matrix")
    words: list[str] = []
    seen: set[str] = set()
    identity_hit = False
    for word, _score in candidates:
        if word == source:
            identity_hit = True
            continue
        if word in seen:
            continue
        seen.add(word)
        words.append(word)
    if not words:
        return Ranking(ranked=(), identity_hit=identity_hit)

    scored: list[RankedCandidate] = []
    for word in words:
        similarity = normalized_similarity(source, word)
        zeta = None
        if reranker == RULEBOOK:
            assert matrix is not None
            zeta = pair_score(matrix, source, word, mode=path_mode)
        scored.append(RankedCandidate(word, similarity, zeta))
    if reranker == BASIC:
        scored.sort(key=lambda c: (-c.similarity, c.word))
    else:
        scored.sort(key=lambda c: (c.zeta, c.word))
    return Ranking(ranked=tuple(scored), identity_hit=identity_hit)


def dump_rulebook(matrix: RulebookMatrix) -> bytes:
    """Serialize the matrix as a TSV table of cells.

    Columns: source_char, target_char, count, probability.  NULL renders
    as <NULL>.  Counts and probabilities use 6 decimals.  Rows follow
    matrix.rows() order.  UTF-8 with LF line endings.
    """
    lines = ["source_char\ttarget_char\tcount\tprobability"]
    for a, b, count, prob in matrix.rows():
        lines.append(f"{_render(a)}\t{_render(b)}\t{count:.6f}\t{prob:.6f}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_rulebook(matrix: RulebookMatrix, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(dump_rulebook(matrix))


def load_rulebook_rows(path: str) -> list[tuple[str, str, float, float]]:
    """Parse a matrix dump back into (source, target, count, probability) rows.

    Labels stay rendered (<NULL> included); values are floats.  Intended
    for inspection tools rather than resuming training.
    """
    rows: list[tuple[str, str, float, float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header.split("\t") != ["source_char", "target_char", "count", "probability"]:
            raise ValueError(f"not a rulebook dump: {path}")
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = unicodedata.normalize("NFC", line).split("\t")
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 columns")
            rows.append((parts[0], parts[1], float(parts[2]), float(parts[3])))
    return rows
