"""Error detection and construction of the ranked suggestion list.

For an error word ``e`` the final list is assembled in a fixed shape: an
optional context-backed suggestion first at rank 1, then every abbreviation
expansion at rank 1, then the ``n`` base candidates at ranks 1..n, and the
error itself last at rank ``n + 1`` so that keeping the word unchanged is
always a scored option.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .lexicon import WordDict
from .nearmiss import DeletionIndex
from .preprocess import Sentence
from .strdist import NoPhoneticContent, edit_distance, phonetic_key

__all__ = [
    "ErrorSite",
    "Suggestion",
    "SuggestionList",
    "base_suggestions",
    "is_error",
    "augment",
]

# Sort rank for candidates whose phonetic key cannot be compared.
_NO_KEY_DISTANCE = 99


@dataclass
class ErrorSite:
    """An error word together with its nearest word neighbours."""

    error: str
    left: str | None = None
    right: str | None = None
    sentence: Sentence | None = None
    position: int = 0


@dataclass
class Suggestion:
    word: str
    element_index: int  # 1-based position in the final list
    rank: int  # confidence tier; all front insertions share rank 1
    source: str  # context | abbreviation | base | identity


@dataclass
class SuggestionList:
    site: ErrorSite
    items: list[Suggestion] = field(default_factory=list)
    base_count: int = 0
    expansion_count: int = 0

    def words(self) -> list[str]:
        return [s.word for s in self.items]


class _DictIndexes:
    """Lazy candidate-lookup structures derived from one WordDict."""

    def __init__(self, words: WordDict) -> None:
        self.surface_by_lower: dict[str, str] = {}
        self.freq_by_lower: dict[str, int] = {}
        self.key_by_lower: dict[str, str] = {}
        self.lowers_by_key: dict[str, list[str]] = {}
        for entry in words.entries():
            lower = entry.surface.lower()
            self.surface_by_lower[lower] = entry.surface
            self.freq_by_lower[lower] = entry.frequency
            try:
                key = phonetic_key(lower)
            except NoPhoneticContent:
                continue
            self.key_by_lower[lower] = key
            self.lowers_by_key.setdefault(key, []).append(lower)
        self.word_index = DeletionIndex(self.surface_by_lower.keys(), 2)
        self.key_index = DeletionIndex(self.lowers_by_key.keys(), 2)


_dict_indexes: "weakref.WeakKeyDictionary[WordDict, _DictIndexes]" = weakref.WeakKeyDictionary()


def _indexes_for(words: WordDict) -> _DictIndexes:
    idx = _dict_indexes.get(words)
    if idx is None:
        idx = _DictIndexes(words)
        _dict_indexes[words] = idx
    return idx


def base_suggestions(e: str, words: WordDict, limit: int = 20) -> list[str]:
    """Ranked dictionary candidates for ``e``.

    Candidates are dictionary words whose phonetic key lies within two edits
    of the error's key, united with near misses within two edits of the
    error itself. They are ordered by word edit distance, then key edit
    distance, then descending frequency, then lexicographically, and cut off
    at ``limit``. Matching is case-insensitive; the returned words carry the
    dictionary's canonical surface form.
    """
    idx = _indexes_for(words)
    e_lower = e.lower()
    try:
        e_key: str | None = phonetic_key(e_lower)
    except NoPhoneticContent:
        e_key = None

    candidates: set[str] = set(idx.word_index.lookup(e_lower))
    if e_key is not None:
        for key in idx.key_index.lookup(e_key):
            candidates.update(idx.lowers_by_key[key])

    ordered = []
    for lower in candidates:
        word_dist = edit_distance(e_lower, lower)
        cand_key = idx.key_by_lower.get(lower)
        if e_key is not None and cand_key is not None:
            key_dist = edit_distance(e_key, cand_key)
        else:
            key_dist = _NO_KEY_DISTANCE
        surface = idx.surface_by_lower[lower]
        ordered.append((word_dist, key_dist, -idx.freq_by_lower[lower], surface))
    ordered.sort()
    return [surface for _, _, _, surface in ordered[:limit]]


def is_error(
    t: str,
    words: WordDict,
    site: ErrorSite,
    context_checker: Callable[[str | None, str, str | None], bool] | None = None,
) -> bool:
    """Flag ``t`` when it is out-of-dictionary or contextually improbable.

    The two detectors are a disjunction: dictionary absence (checked
    case-insensitively) catches non-words, while the optional context
    checker catches errors that happen to be valid words.
    """
    if t not in words:
        return True
    if context_checker is not None:
        return bool(context_checker(site.left, t, site.right))
    return False


def augment(
    base: Sequence[str],
    e: str,
    expansions: Sequence[str] = (),
    context_suggestion: str | None = None,
    site: ErrorSite | None = None,
) -> SuggestionList:
    """Assemble the final suggestion list around the base candidates.

    Duplicates arriving from different sources are kept as distinct entries
    and scored independently.
    """
    if site is None:
        site = ErrorSite(error=e)
    items: list[Suggestion] = []
    if context_suggestion is not None:
        items.append(Suggestion(context_suggestion, 0, 1, "context"))
    for expansion in expansions:
        items.append(Suggestion(expansion, 0, 1, "abbreviation"))
    for rank, word in enumerate(base, start=1):
        items.append(Suggestion(word, 0, rank, "base"))
    items.append(Suggestion(e, 0, len(base) + 1, "identity"))
    for j, item in enumerate(items, start=1):
        item.element_index = j
    return SuggestionList(
        site=site,
        items=items,
        base_count=len(base),
        expansion_count=len(expansions),
    )
