"""Induced bilingual lexicon: ranked equivalents per source word.

Each source-language word maps to a ranked list of target-language
equivalents, each carrying the similarity it was accepted with and the
pass on which it was learned.  The lexicon only ever grows: entries are
never dropped, and a (source, target) similarity is replaced only by a
strictly higher one.

Serialization is a four-column TSV (source, target, similarity, pass)
with a header row, UTF-8, LF line endings, similarities at 6 decimals,
rows sorted by source and then candidate rank.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

HEADER = ("source", "target", "similarity", "pass")


@dataclass(frozen=True)
class Equivalent:
    """One ranked target-side candidate for a source word."""

    target: str
    similarity: float
    pass_learned: int


@dataclass
class LexiconEntry:
    """A source word with its ranked equivalents (best first)."""

    source: str
    candidates: list[Equivalent] = field(default_factory=list)

    @property
    def is_identity(self) -> bool:
        """True when the top-ranked equivalent spells the source itself."""
        return bool(self.candidates) and self.candidates[0].target == self.source


@dataclass
class LexiconMeta:
    """Provenance of a lexicon: reranker, gate threshold, pass budget."""

    method: str = ""
    threshold: float | None = None
    passes: int | None = None


class Lexicon:
    """Growing map from source words to ranked equivalents."""

    def __init__(self, meta: LexiconMeta | None = None) -> None:
        self.entries: dict[str, LexiconEntry] = {}
        self.meta = meta or LexiconMeta()

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, source: str) -> bool:
        return source in self.entries

    def update(self, source: str, target: str, similarity: float, pass_learned: int) -> None:
        """Record target as an equivalent of source.

        A new (source, target) pair is inserted; an existing one keeps its
        stored similarity unless the new one is strictly higher.  Candidate
        order is similarity descending, target word ascending on ties.
        """
        if not source or not target:
            raise ValueError("source and target must be non-empty")
        if similarity < 0.0:
            raise ValueError(f"similarity must be non-negative, got {similarity}")
        if pass_learned < 1:
            raise ValueError(f"pass numbers start at 1, got {pass_learned}")
        entry = self.entries.get(source)
        if entry is None:
            entry = LexiconEntry(source)
            self.entries[source] = entry
        for i, cand in enumerate(entry.candidates):
            if cand.target == target:
                if similarity > cand.similarity:
                    entry.candidates[i] = Equivalent(target, similarity, pass_learned)
                break
        else:
            entry.candidates.append(Equivalent(target, similarity, pass_learned))
        entry.candidates.sort(key=lambda c: (-c.similarity, c.target))

    def best_equivalent(self, source: str) -> str | None:
        """Top-ranked target for source, or None when absent."""
        entry = self.entries.get(source)
        if entry is None or not entry.candidates:
            return None
        return entry.candidates[0].target

    def sources(self) -> list[str]:
        return sorted(self.entries)

    def predictions(self) -> dict[str, list[str]]:
        """Ranked target lists per source, for evaluation."""
        return {source: [c.target for c in entry.candidates] for source, entry in self.entries.items()}


def update_lexicon(
    lexicon: Lexicon, source: str, target: str, similarity: float, pass_learned: int
) -> None:
    lexicon.update(source, target, similarity, pass_learned)


def best_equivalent(lexicon: Lexicon, source: str) -> str | None:
    return lexicon.best_equivalent(source)


def export_lexicon(lexicon: Lexicon, top_k: int = 5) -> bytes:
    """Serialize up to top_k equivalents per source as TSV bytes.

    An empty lexicon yields the header row only.  Output is byte-stable
    for equal lexicon contents.
    """
    if top_k < 1:
        raise ValueError(f"top_k must be at least 1, got {top_k}")
    lines = ["\t".join(HEADER)]
    for source in sorted(lexicon.entries):
        for cand in lexicon.entries[source].candidates[:top_k]:
            lines.append(f"{source}\t{cand.target}\t{cand.similarity:.6f}\t{cand.pass_learned}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_lexicon(lexicon: Lexicon, path: str, top_k: int = 5) -> None:
    with open(path, "wb") as fh:
        fh.write(export_lexicon(lexicon, top_k))


def load_lexicon(path: str) -> Lexicon:
    """Read a lexicon TSV written by export_lexicon.

    Text is NFC-normalized on the way in.  Raises ValueError on a missing
    or wrong header or malformed rows.
    """
    lexicon = Lexicon()
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if tuple(header.split("\t")) != HEADER:
            raise ValueError(f"not a lexicon file (bad header): {path}")
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = unicodedata.normalize("NFC", line).split("\t")
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 columns, got {len(parts)}")
            source, target, similarity, pass_learned = parts
            lexicon.update(source, target, float(similarity), int(pass_learned))
    return lexicon
