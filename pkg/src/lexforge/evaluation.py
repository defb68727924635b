"""Evaluation of an induced lexicon against a silver reference.

The silver lexicon maps each source word to one or more acceptable
target-side translations.  Metrics:

* P@k: fraction of silver source types whose top-k predictions contain
  at least one acceptable translation, scaled to 0..100.  Source words
  with no prediction count as misses, so P@k never benefits from
  abstaining; coverage reports the abstention rate separately.
* NIA@k (non-identical accuracy): over the pooled top-k predictions that
  do not merely copy the source word, the fraction that are acceptable,
  scaled to 0..100.  Absent when the pool is empty.  Not monotone in k.
* identity baseline: every source word predicts itself; P@k is then
  independent of k and NIA@k undefined.

Silver file format: TSV without header, one source word followed by one
or more acceptable targets per line.  NFC-normalized at load time.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Predictions = Mapping[str, Sequence[str]]
Silver = Mapping[str, Sequence[str]]


@dataclass(frozen=True)
class EvalResult:
    """Metrics at one cutoff k, with the raw counts behind them."""

    k: int
    p_at_k: float
    nia_at_k: float | None
    coverage: float
    evaluated: int
    p_hits: int
    nia_pool: int
    nia_hits: int

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "p_at_k": round(self.p_at_k, 4),
            "nia_at_k": None if self.nia_at_k is None else round(self.nia_at_k, 4),
            "coverage": round(self.coverage, 4),
        }


def load_silver(path: str) -> dict[str, list[str]]:
    """Read a silver lexicon TSV: source, then acceptable targets."""
    silver: dict[str, list[str]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = unicodedata.normalize("NFC", line.rstrip("\n"))
            if not line:
                continue
            parts = [p for p in line.split("\t") if p]
            if len(parts) < 2:
                raise ValueError(f"{path}:{lineno}: need a source and at least one target")
            silver[parts[0]] = parts[1:]
    if not silver:
        raise ValueError(f"empty silver lexicon: {path}")
    return silver


def coverage(predictions: Predictions, silver: Silver) -> float:
    """Fraction of silver source types with at least one prediction."""
    if not silver:
        raise ValueError("empty silver lexicon")
    covered = sum(1 for word in silver if predictions.get(word))
    return covered / len(silver)


def precision_at_k(predictions: Predictions, silver: Silver, k: int) -> float:
    """Any-of-top-k accuracy over silver source types, in 0..100."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if not silver:
        raise ValueError("empty silver lexicon")
    hits = _p_hits(predictions, silver, k)
    return 100.0 * hits / len(silver)


def _p_hits(predictions: Predictions, silver: Silver, k: int) -> int:
    hits = 0
    for word, accepted in silver.items():
        top = list(predictions.get(word, ()))[:k]
        if any(t in accepted for t in top):
            hits += 1
    return hits


def nia_at_k(predictions: Predictions, silver: Silver, k: int) -> float | None:
    """Accuracy over pooled non-identical top-k predictions, in 0..100.

    The pool collects, over silver source words, every top-k prediction
    that differs from its source word.  None when the pool is empty.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if not silver:
        raise ValueError("empty silver lexicon")
    pool, hits = _nia_counts(predictions, silver, k)
    if pool == 0:
        return None
    return 100.0 * hits / pool


def _nia_counts(predictions: Predictions, silver: Silver, k: int) -> tuple[int, int]:
    pool = 0
    hits = 0
    for word, accepted in silver.items():
        for prediction in list(predictions.get(word, ()))[:k]:
            if prediction == word:
                continue
            pool += 1
            if prediction in accepted:
                hits += 1
    return pool, hits


def evaluate(predictions: Predictions, silver: Silver, ks: Iterable[int] = (1, 2, 3, 5)) -> list[EvalResult]:
    """Compute P@k, NIA@k, and coverage for each cutoff."""
    if not silver:
        raise ValueError("empty silver lexicon")
    cov = coverage(predictions, silver)
    results = []
    for k in sorted(set(ks)):
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        p_hits = _p_hits(predictions, silver, k)
        pool, hits = _nia_counts(predictions, silver, k)
        results.append(
            EvalResult(
                k=k,
                p_at_k=100.0 * p_hits / len(silver),
                nia_at_k=None if pool == 0 else 100.0 * hits / pool,
                coverage=cov,
                evaluated=len(silver),
                p_hits=p_hits,
                nia_pool=pool,
                nia_hits=hits,
            )
        )
    return results


def identity_predictions(silver: Silver) -> dict[str, list[str]]:
    """The copy baseline: every source word predicts itself."""
    return {word: [word] for word in silver}


def identity_baseline(silver: Silver, ks: Iterable[int] = (1,)) -> list[EvalResult]:
    """Evaluate the copy baseline; P@k is independent of k by construction."""
    return evaluate(identity_predictions(silver), silver, ks)


def format_results(results: Sequence[EvalResult]) -> str:
    """Aligned text table, one row per k; NIA renders '-' when absent."""
    header = f"{'k':>3}  {'P@k':>7}  {'NIA@k':>7}  {'coverage':>8}"
    lines = [header]
    for r in results:
        nia = "-" if r.nia_at_k is None else f"{r.nia_at_k:7.2f}"
        lines.append(f"{r.k:>3}  {r.p_at_k:7.2f}  {nia:>7}  {r.coverage:8.3f}")
    return "\n".join(lines)


def results_to_json(results: Sequence[EvalResult]) -> str:
    return json.dumps([r.to_dict() for r in results], indent=2) + "\n"
