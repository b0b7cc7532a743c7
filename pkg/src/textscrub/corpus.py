"""Corpus statistics: frequency indexes, significance weights, context checks.

A :class:`CorpusIndex` holds unigram/bigram frequencies plus document
frequencies for either the domain collection (the material being cleaned) or
a large general collection. Two weights are derived from it for a candidate
``s`` between neighbours ``l`` and ``r``:

* domain significance: the candidate's share of the combined frequency mass
  of all competing suggestions, ``raw(s) = f(s) + f(l,s) + f(s,r)`` divided
  by the sum of ``raw`` over the distinct suggestions, scaled by a
  normalized inverse document frequency in [0, 1].
* general significance: ``(df2(l,s) + df2(s,r)) / (2 * df(s))`` scaled by
  the same normalized idf, where ``df2`` counts documents containing the
  ordered adjacent pair.

Counting is case-sensitive on purpose: the statistics are what let the
pipeline notice that ``jones`` is written ``Jones`` everywhere else.

:class:`ContextSuggester` is the statistical stand-in for a web-scale
spellcheck service: it proposes a replacement for a word from the index
vocabulary when the bigram evidence for it overwhelms the word's own, and
can simultaneously point out a misspelt neighbour.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .nearmiss import DeletionIndex
from .preprocess import is_placeholder, split_sentences, tokenize

__all__ = [
    "CorpusIndex",
    "build_index",
    "domain_significance",
    "general_significance",
    "ContextHit",
    "ContextSuggester",
]

DOMAIN = "domain"
GENERAL = "general"

_INDEX_MAGIC = "textscrub-index"
_INDEX_VERSION = "1"


@dataclass
class CorpusIndex:
    role: str = DOMAIN
    n_documents: int = 0
    unigram: dict[str, int] = field(default_factory=dict)
    bigram: dict[tuple[str, str], int] = field(default_factory=dict)
    doc_freq: dict[str, int] = field(default_factory=dict)
    pair_doc_freq: dict[tuple[str, str], int] = field(default_factory=dict)

    def unigram_count(self, word: str | None) -> int:
        if word is None:
            return 0
        return self.unigram.get(word, 0)

    def bigram_count(self, a: str | None, b: str | None) -> int:
        if a is None or b is None:
            return 0
        return self.bigram.get((a, b), 0)

    def doc_frequency(self, word: str | None) -> int:
        if word is None:
            return 0
        return self.doc_freq.get(word, 0)

    def pair_doc_frequency(self, a: str | None, b: str | None) -> int:
        if a is None or b is None:
            return 0
        return self.pair_doc_freq.get((a, b), 0)

    def idf_norm(self, word: str) -> float:
        """log(1 + N/df) / log(1 + N), in (0, 1]; 0 when the word is unseen."""
        df = self.doc_freq.get(word, 0)
        if df == 0 or self.n_documents == 0:
            return 0.0
        n = self.n_documents
        return math.log(1 + n / df) / math.log(1 + n)

    def vocabulary(self) -> list[str]:
        return sorted(self.unigram)

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("%s\t%s\t%s\t%d\n" % (_INDEX_MAGIC, _INDEX_VERSION, self.role, self.n_documents))
            for word in sorted(self.unigram):
                fh.write("U\t%s\t%d\n" % (word, self.unigram[word]))
            for a, b in sorted(self.bigram):
                fh.write("B\t%s\t%s\t%d\n" % (a, b, self.bigram[(a, b)]))
            for word in sorted(self.doc_freq):
                fh.write("D\t%s\t%d\n" % (word, self.doc_freq[word]))
            for a, b in sorted(self.pair_doc_freq):
                fh.write("P\t%s\t%s\t%d\n" % (a, b, self.pair_doc_freq[(a, b)]))

    @classmethod
    def load(cls, path: str) -> "CorpusIndex":
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n").split("\t")
            if len(header) != 4 or header[0] != _INDEX_MAGIC:
                raise ValueError("%s is not a textscrub corpus index" % path)
            if header[1] != _INDEX_VERSION:
                raise ValueError("unsupported index version %r" % header[1])
            idx = cls(role=header[2], n_documents=int(header[3]))
            for line in fh:
                cols = line.rstrip("\n").split("\t")
                tag = cols[0]
                if tag == "U":
                    idx.unigram[cols[1]] = int(cols[2])
                elif tag == "B":
                    idx.bigram[(cols[1], cols[2])] = int(cols[3])
                elif tag == "D":
                    idx.doc_freq[cols[1]] = int(cols[2])
                elif tag == "P":
                    idx.pair_doc_freq[(cols[1], cols[2])] = int(cols[3])
        return idx


def _word_tokens(sentence_text: str) -> list[str]:
    return [
        t.text
        for t in tokenize(sentence_text)
        if not is_placeholder(t.text) and any(c.isalnum() for c in t.text)
    ]


def build_index(documents: Iterable[str], role: str = DOMAIN) -> CorpusIndex:
    """Count unigrams, adjacent bigrams and document frequencies.

    Each element of ``documents`` is one document (one chat session or one
    file). Tokens follow the pipeline's tokenizer; punctuation-only tokens
    and placeholders do not take part in adjacency.
    """
    idx = CorpusIndex(role=role)
    for body in documents:
        idx.n_documents += 1
        doc_words: set[str] = set()
        doc_pairs: set[tuple[str, str]] = set()
        for sentence in split_sentences(body):
            words = _word_tokens(sentence.text)
            for w in words:
                idx.unigram[w] = idx.unigram.get(w, 0) + 1
                doc_words.add(w)
            for a, b in zip(words, words[1:]):
                idx.bigram[(a, b)] = idx.bigram.get((a, b), 0) + 1
                doc_pairs.add((a, b))
        for w in doc_words:
            idx.doc_freq[w] = idx.doc_freq.get(w, 0) + 1
        for pair in doc_pairs:
            idx.pair_doc_freq[pair] = idx.pair_doc_freq.get(pair, 0) + 1
    return idx


def _raw_mass(left: str | None, word: str, right: str | None, index: CorpusIndex) -> int:
    return (
        index.unigram_count(word)
        + index.bigram_count(left, word)
        + index.bigram_count(word, right)
    )


def domain_significance(
    left: str | None,
    suggestion: str,
    right: str | None,
    all_suggestions: Sequence[str],
    index: CorpusIndex,
) -> float:
    """Share of the suggestion set's frequency mass owned by ``suggestion``.

    The share is computed over the distinct suggestion words and scaled by
    the normalized idf of the suggestion; 0 when no suggestion has any mass.
    """
    distinct = dict.fromkeys(all_suggestions)
    if suggestion not in distinct:
        distinct[suggestion] = None
    total = sum(_raw_mass(left, w, right, index) for w in distinct)
    if total == 0:
        return 0.0
    share = _raw_mass(left, suggestion, right, index) / total
    return share * index.idf_norm(suggestion)


def general_significance(
    left: str | None,
    suggestion: str,
    right: str | None,
    index: CorpusIndex,
) -> float:
    """Document-level support of the suggestion next to its neighbours.

    ``(df2(l,s) + df2(s,r)) / (2 * df(s))`` scaled by the normalized idf;
    the halving keeps the ratio at most 1 when both neighbour pairs occur in
    every document containing the suggestion.
    """
    df = index.doc_frequency(suggestion)
    if df == 0:
        return 0.0
    ratio = (
        index.pair_doc_frequency(left, suggestion)
        + index.pair_doc_frequency(suggestion, right)
    ) / (2 * df)
    return ratio * index.idf_norm(suggestion)


@dataclass
class ContextHit:
    """A context-backed replacement, possibly with neighbour repairs."""

    word: str
    repaired_left: str | None
    repaired_right: str | None
    support: int
    own_support: int


class ContextSuggester:
    """Bigram-evidence replacement suggester over a general corpus index.

    ``suggest`` scans index-vocabulary words within two edits of the query
    and accepts the best supported one only when its support clears an
    absolute floor and a multiple of the query's own support; it also
    reports when swapping a neighbour for a near-miss of its own makes the
    evidence strictly stronger. ``is_real_word_error`` applies the same
    machinery to in-dictionary words with a stricter dominance factor.
    """

    def __init__(
        self,
        index: CorpusIndex,
        abs_threshold: float = 2.0,
        ratio_threshold: float = 10.0,
        real_word_factor: float = 50.0,
    ) -> None:
        self.index = index
        self.abs_threshold = abs_threshold
        self.ratio_threshold = ratio_threshold
        self.real_word_factor = real_word_factor
        self._vocab_index: DeletionIndex | None = None
        self._near_cache: dict[str, tuple[str, ...]] = {}

    def _near(self, word: str) -> tuple[str, ...]:
        cached = self._near_cache.get(word)
        if cached is None:
            if self._vocab_index is None:
                self._vocab_index = DeletionIndex(self.index.unigram.keys(), 2)
            cached = tuple(self._vocab_index.lookup(word))
            self._near_cache[word] = cached
        return cached

    def _pair(self, a: str | None, b: str | None) -> int:
        return self.index.bigram_count(a, b)

    def _neighbour_variants(self, neighbour: str | None) -> tuple[str, ...]:
        if neighbour is None:
            return ()
        return tuple(v for v in self._near(neighbour) if v != neighbour)

    @staticmethod
    def _best_side(
        original: int, variants: Iterable[tuple[str, int]]
    ) -> tuple[int, str | None]:
        best_value, best_word = original, None
        for word, value in variants:
            if value > best_value:
                best_value, best_word = value, word
        return best_value, best_word

    def suggest(self, left: str | None, word: str, right: str | None) -> ContextHit | None:
        if self.index.n_documents == 0:
            return None
        own = self._pair(left, word) + self._pair(word, right)
        needed = max(self.abs_threshold, self.ratio_threshold * (own + 1))

        left_variants = self._neighbour_variants(left)
        right_variants = self._neighbour_variants(right)

        best: ContextHit | None = None
        best_key = (-1, -1)
        for cand in self._near(word):
            # support is bounded by twice the unigram count, so candidates
            # that cannot clear the gate are skipped without a bigram scan
            if 2 * self.index.unigram_count(cand) < needed:
                continue
            orig_left = self._pair(left, cand)
            orig_right = self._pair(cand, right)
            left_value, left_repair = self._best_side(
                orig_left, ((v, self._pair(v, cand)) for v in left_variants)
            )
            right_value, right_repair = self._best_side(
                orig_right, ((v, self._pair(cand, v)) for v in right_variants)
            )
            support = left_value + right_value
            key = (support, orig_left + orig_right)
            if key > best_key:
                best_key = key
                best = ContextHit(cand, left_repair, right_repair, support, own)
        if best is None or best.word == word:
            return None
        if best.support < needed:
            return None
        return best

    def is_real_word_error(self, left: str | None, word: str, right: str | None) -> bool:
        """True when context evidence says a valid word is the wrong word."""
        if left is None and right is None:
            return False
        hit = self.suggest(left, word, right)
        if hit is None:
            return False
        return hit.support >= self.real_word_factor * hit.own_support
