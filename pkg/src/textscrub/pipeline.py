"""End-to-end document cleaning.

A :class:`Cleaner` strips markup, masks non-word entities, splits sentences
and walks the tokens of each sentence left to right. All-uppercase tokens
are lowercased for checking, all-digit and punctuation-only tokens are
skipped, and flagged tokens are replaced in place by the best scored
suggestion, so later sites always see corrected left context. Neighbour
repairs emitted by the context suggester are applied immediately for the
same reason.

Three modes are supported:

* ``baseline``: dictionary-absence detection, first base candidate wins.
* ``basic``: adds abbreviation expansions, the identity fallback and the
  six-component score with the history-list reuse factor.
* ``enhanced``: adds the context suggester (recorded into the spelling
  dictionary, which also backs the reuse factor) and real-word error
  detection.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .corpus import ContextSuggester, CorpusIndex
from .lexicon import Lexicons
from .preprocess import (
    RawDocument,
    Sentence,
    extract_entities,
    is_placeholder,
    restore_entities,
    split_sentences,
    strip_markup,
    tokenize,
)
from .scoring import (
    MODE_BASELINE,
    MODE_BASIC,
    MODE_ENHANCED,
    MODES,
    score_suggestions,
    select_replacement,
)
from .suggest import ErrorSite, augment, base_suggestions, is_error

__all__ = ["CleanConfig", "CorrectionRecord", "DocumentReport", "CleanReport", "Cleaner", "clean_document"]

logger = logging.getLogger(__name__)


@dataclass
class CleanConfig:
    mode: str = MODE_ENHANCED
    word_dict: str | None = None
    abbreviation_dict: str | None = None
    spelling_dict: str | None = None
    history: str | None = None
    domain_index: str | None = None
    general_index: str | None = None
    emoticons: str | None = None
    suggestion_limit: int = 20
    abs_threshold: float = 2.0
    ratio_threshold: float = 10.0
    real_word_factor: float = 50.0

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ValueError("unknown mode %r; expected one of %s" % (self.mode, ", ".join(MODES)))
        if self.suggestion_limit < 1:
            raise ValueError("suggestion_limit must be positive")


@dataclass
class CorrectionRecord:
    """One flagged token and what happened to it."""

    doc_id: str
    sentence_index: int
    token_position: int
    original_token: str
    error: str
    chosen: str
    changed: bool
    source: str
    suggestions: list[dict] = field(default_factory=list)
    repaired_left: str | None = None
    repaired_right: str | None = None


@dataclass
class DocumentReport:
    doc_id: str
    corrections: list[CorrectionRecord] = field(default_factory=list)


@dataclass
class CleanReport:
    documents: list[DocumentReport] = field(default_factory=list)
    tokens_seen: int = 0
    errors_flagged: int = 0
    corrections_applied: int = 0
    identity_kept: int = 0

    def to_dict(self) -> dict:
        return {
            "documents": [asdict(d) for d in self.documents],
            "counters": {
                "tokens_seen": self.tokens_seen,
                "errors_flagged": self.errors_flagged,
                "corrections_applied": self.corrections_applied,
                "identity_kept": self.identity_kept,
            },
        }


def _first_word(text: str) -> str:
    return text.split()[0] if " " in text else text


def _last_word(text: str) -> str:
    return text.split()[-1] if " " in text else text


def _is_word(text: str) -> bool:
    return not is_placeholder(text) and any(c.isalnum() for c in text)


class Cleaner:
    """Reusable cleaning engine; dictionaries and indexes load once."""

    def __init__(
        self,
        config: CleanConfig,
        lexicons: Lexicons,
        domain_index: CorpusIndex | None = None,
        general_index: CorpusIndex | None = None,
        emoticons: Sequence[str] | None = None,
    ) -> None:
        config.validate()
        self.config = config
        self.lexicons = lexicons
        self.domain_index = domain_index
        self.general_index = general_index
        self.emoticons = emoticons
        self.suggester: ContextSuggester | None = None
        if config.mode == MODE_ENHANCED:
            if general_index is not None:
                self.suggester = ContextSuggester(
                    general_index,
                    abs_threshold=config.abs_threshold,
                    ratio_threshold=config.ratio_threshold,
                    real_word_factor=config.real_word_factor,
                )
            else:
                logger.warning(
                    "enhanced mode without a general index: context suggestions "
                    "and real-word detection are disabled, general significance is 0"
                )
        self._base_cache: dict[str, list[str]] = {}

    # ------------------------------------------------------------------
    # document level
    # ------------------------------------------------------------------

    def clean_document(self, doc: RawDocument) -> tuple[str, CleanReport]:
        report = CleanReport()
        cleaned = self._clean_one(doc, report)
        return cleaned, report

    def clean_documents(self, docs: Sequence[RawDocument]) -> tuple[list[str], CleanReport]:
        report = CleanReport()
        return [self._clean_one(doc, report) for doc in docs], report

    def clean_sentences(
        self, sentences: Sequence[str], doc_id: str = "doc", report: CleanReport | None = None
    ) -> tuple[list[list[str]], CleanReport]:
        """Clean pre-split sentences; returns per-token slots per sentence.

        Slot ``i`` holds the final text of input token ``i`` (possibly a
        multi-word expansion), which keeps positions aligned for callers
        that need token-level outcomes.
        """
        if report is None:
            report = CleanReport()
        doc_report = DocumentReport(doc_id=doc_id)
        report.documents.append(doc_report)
        all_slots = []
        for index, text in enumerate(sentences):
            sentence = Sentence(text, doc_id, index, (0, len(text)))
            _, slots = self._clean_sentence(sentence, report, doc_report)
            all_slots.append(slots)
        return all_slots, report

    def _clean_one(self, doc: RawDocument, report: CleanReport) -> str:
        if doc.source_format in ("html", "xml"):
            text = strip_markup(doc)
        else:
            text = doc.body
        masked, entities = extract_entities(text, self.emoticons)
        sentences = split_sentences(masked, doc.id)
        doc_report = DocumentReport(doc_id=doc.id)
        report.documents.append(doc_report)

        out = []
        prev = 0
        for sentence in sentences:
            start, end = sentence.span
            new_text, _ = self._clean_sentence(sentence, report, doc_report)
            out.append(masked[prev:start])
            out.append(new_text)
            prev = end
        out.append(masked[prev:])
        return restore_entities("".join(out), entities)

    # ------------------------------------------------------------------
    # sentence level
    # ------------------------------------------------------------------

    def _neighbour(self, slots: list[str], pos: int, step: int) -> tuple[str | None, int]:
        i = pos + step
        while 0 <= i < len(slots):
            if _is_word(slots[i]):
                word = _last_word(slots[i]) if step < 0 else _first_word(slots[i])
                return word, i
            i += step
        return None, -1

    def _base(self, error: str) -> list[str]:
        cached = self._base_cache.get(error)
        if cached is None:
            cached = base_suggestions(error, self.lexicons.words, self.config.suggestion_limit)
            self._base_cache[error] = cached
        return cached

    def _clean_sentence(
        self, sentence: Sentence, report: CleanReport, doc_report: DocumentReport
    ) -> tuple[str, list[str]]:
        tokens = tokenize(sentence)
        slots = [t.text for t in tokens]
        checker = self.suggester.is_real_word_error if self.suggester is not None else None

        for pos, token in enumerate(tokens):
            report.tokens_seen += 1
            original = slots[pos]
            if is_placeholder(original) or not any(c.isalpha() for c in original):
                continue
            work = original.lower() if original.isupper() else original
            left, left_pos = self._neighbour(slots, pos, -1)
            right, right_pos = self._neighbour(slots, pos, +1)
            site = ErrorSite(work, left, right, sentence, pos)
            if not is_error(work, self.lexicons.words, site, checker):
                continue
            report.errors_flagged += 1
            try:
                record = self._correct_site(site, original, slots, pos, left_pos, right_pos)
            except Exception:
                logger.exception(
                    "scoring failed for %r in %s sentence %d; token kept",
                    work,
                    sentence.doc_id,
                    sentence.index,
                )
                report.identity_kept += 1
                continue
            record.doc_id = sentence.doc_id
            record.sentence_index = sentence.index
            doc_report.corrections.append(record)
            if record.chosen != work:
                report.corrections_applied += 1
                slots[pos] = record.chosen
            else:
                # keep the token as written, including its original casing
                report.identity_kept += 1

        return self._rebuild(sentence.text, tokens, slots), slots

    def _correct_site(
        self,
        site: ErrorSite,
        original: str,
        slots: list[str],
        pos: int,
        left_pos: int,
        right_pos: int,
    ) -> CorrectionRecord:
        work = site.error
        mode = self.config.mode
        repaired_left = repaired_right = None

        if mode == MODE_BASELINE:
            base = self._base(work)
            chosen = base[0] if base else work
            return CorrectionRecord(
                doc_id="",
                sentence_index=0,
                token_position=pos,
                original_token=original,
                error=work,
                chosen=chosen,
                changed=chosen != work,
                source="base" if base else "identity",
                suggestions=[{"word": w, "rank": i} for i, w in enumerate(base, start=1)],
            )

        front = None
        if mode == MODE_ENHANCED and self.suggester is not None:
            hit = self.suggester.suggest(site.left, work, site.right)
            if hit is not None:
                self.lexicons.spelling.record_auto(work, hit.word)
                front = hit.word
                if hit.repaired_left is not None and left_pos >= 0 and " " not in slots[left_pos]:
                    slots[left_pos] = hit.repaired_left
                    repaired_left = hit.repaired_left
                    site.left = hit.repaired_left
                if hit.repaired_right is not None and right_pos >= 0 and " " not in slots[right_pos]:
                    slots[right_pos] = hit.repaired_right
                    repaired_right = hit.repaired_right
                    site.right = hit.repaired_right
            if front is None:
                front = self.lexicons.spelling.lookup(work)

        expansions = self.lexicons.abbreviations.lookup(work)
        suggestions = augment(self._base(work), work, expansions, front, site)
        scored = score_suggestions(
            suggestions, self.lexicons, self.domain_index, self.general_index, mode
        )
        replacement = select_replacement(scored)
        if mode == MODE_BASIC and replacement.changed:
            self.lexicons.history.record(work, replacement.chosen)

        return CorrectionRecord(
            doc_id="",
            sentence_index=0,
            token_position=pos,
            original_token=original,
            error=work,
            chosen=replacement.chosen,
            changed=replacement.changed,
            source=replacement.source,
            suggestions=[
                {
                    "word": item.word,
                    "source": item.source,
                    "rank": item.rank,
                    "element_index": item.element_index,
                    **score.as_dict(),
                }
                for item, score in scored
            ],
            repaired_left=repaired_left,
            repaired_right=repaired_right,
        )

    @staticmethod
    def _rebuild(sentence_text: str, tokens, slots: list[str]) -> str:
        out = []
        prev = 0
        for token, new_text in zip(tokens, slots):
            start, end = token.char_span
            out.append(sentence_text[prev:start])
            out.append(new_text)
            prev = end
        out.append(sentence_text[prev:])
        return "".join(out)


def clean_document(
    doc: RawDocument,
    config: CleanConfig,
    lexicons: Lexicons,
    domain_index: CorpusIndex | None = None,
    general_index: CorpusIndex | None = None,
    emoticons: Sequence[str] | None = None,
) -> tuple[str, CleanReport]:
    """One-shot convenience wrapper around :class:`Cleaner`."""
    cleaner = Cleaner(config, lexicons, domain_index, general_index, emoticons)
    return cleaner.clean_document(doc)
