"""Fast lookup of vocabulary entries within a small edit distance.

A :class:`DeletionIndex` precomputes, for every vocabulary entry, all strings
reachable by deleting up to ``max_distance`` characters. Two strings within
Damerau-Levenshtein distance ``d <= max_distance`` always share such a
deletion variant, so a query only has to probe its own variants and verify
the few colliding entries with the exact distance.
"""

from __future__ import annotations

from typing import Iterable

from .strdist import edit_distance

__all__ = ["DeletionIndex"]


def _deletion_variants(word: str, depth: int) -> set[str]:
    variants = {word}
    frontier = {word}
    for _ in range(depth):
        nxt = set()
        for w in frontier:
            for i in range(len(w)):
                nxt.add(w[:i] + w[i + 1 :])
        nxt -= variants
        variants |= nxt
        frontier = nxt
    return variants


class DeletionIndex:
    def __init__(self, words: Iterable[str], max_distance: int = 2) -> None:
        self.max_distance = max_distance
        self._buckets: dict[str, list[str]] = {}
        for word in words:
            for variant in _deletion_variants(word, max_distance):
                self._buckets.setdefault(variant, []).append(word)

    def lookup(self, word: str) -> list[str]:
        """Vocabulary entries within ``max_distance`` edits, sorted."""
        seen: set[str] = set()
        for variant in _deletion_variants(word, self.max_distance):
            bucket = self._buckets.get(variant)
            if bucket:
                seen.update(bucket)
        return sorted(w for w in seen if edit_distance(word, w) <= self.max_distance)
