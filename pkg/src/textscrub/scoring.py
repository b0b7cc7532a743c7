"""The six-component candidate score and replacement selection.

Every suggestion is scored as a plain, unweighted sum::

    total = rank_weight + edit_similarity + reuse + abbreviation
            + domain + general

where ``rank_weight`` is the reciprocal of the suggestion's rank,
``edit_similarity`` the reciprocal of (edit distance + 1), ``reuse`` and
``abbreviation`` are binary dictionary-membership factors and ``domain`` /
``general`` are the corpus significance weights. The replacement is the
argmax over the list; because the error itself is always present as the
last-ranked candidate, "leave it alone" competes on equal terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .corpus import CorpusIndex, domain_significance, general_significance
from .lexicon import AbbreviationDict, CorrectionHistory, Lexicons, SpellingDict
from .strdist import normalized_edit_distance
from .suggest import ErrorSite, Suggestion, SuggestionList

__all__ = [
    "ScoreBreakdown",
    "Replacement",
    "reuse_factor",
    "abbreviation_factor",
    "combined_score",
    "score_suggestions",
    "select_replacement",
]

MODE_BASELINE = "baseline"
MODE_BASIC = "basic"
MODE_ENHANCED = "enhanced"
MODES = (MODE_BASELINE, MODE_BASIC, MODE_ENHANCED)


@dataclass
class ScoreBreakdown:
    """One candidate's six components and their exact sum."""

    rank_weight: float
    edit_similarity: float
    reuse: float
    abbreviation: float
    domain: float
    general: float
    total: float = field(init=False)

    def __post_init__(self) -> None:
        self.total = (
            self.rank_weight
            + self.edit_similarity
            + self.reuse
            + self.abbreviation
            + self.domain
            + self.general
        )

    def as_dict(self) -> dict[str, float]:
        return {
            "rank_weight": self.rank_weight,
            "edit_similarity": self.edit_similarity,
            "reuse": self.reuse,
            "abbreviation": self.abbreviation,
            "domain": self.domain,
            "general": self.general,
            "total": self.total,
        }


@dataclass
class Replacement:
    original: str
    chosen: str
    breakdown: ScoreBreakdown
    all_scored: list[tuple[Suggestion, ScoreBreakdown]]
    changed: bool
    source: str = "identity"


def reuse_factor(
    error: str,
    suggestion: str,
    mode: str,
    spelling: SpellingDict | None = None,
    history: CorrectionHistory | None = None,
) -> int:
    """1 when the suggestion is the remembered replacement for the error.

    Enhanced mode consults the spelling dictionary (context-suggester
    recordings plus user entries); basic mode consults the history list of
    past replacements.
    """
    if mode == MODE_ENHANCED:
        if spelling is None:
            return 0
        return 1 if spelling.lookup(error) == suggestion else 0
    if mode == MODE_BASIC:
        if history is None:
            return 0
        return history.reuse(error, suggestion)
    raise ValueError("reuse factor is undefined for mode %r" % mode)


def abbreviation_factor(suggestion: str, abbreviations: AbbreviationDict) -> int:
    """1 when the suggestion itself is a known abbreviation."""
    return 1 if suggestion in abbreviations else 0


def combined_score(
    suggestion: Suggestion,
    site: ErrorSite,
    lexicons: Lexicons,
    domain_index: CorpusIndex | None,
    general_index: CorpusIndex | None,
    all_suggestions: Sequence[str],
    mode: str,
) -> ScoreBreakdown:
    """Score one suggestion against an error site."""
    domain = (
        domain_significance(site.left, suggestion.word, site.right, all_suggestions, domain_index)
        if domain_index is not None
        else 0.0
    )
    general = (
        general_significance(site.left, suggestion.word, site.right, general_index)
        if general_index is not None
        else 0.0
    )
    return ScoreBreakdown(
        rank_weight=1.0 / suggestion.rank,
        edit_similarity=normalized_edit_distance(site.error, suggestion.word),
        reuse=float(
            reuse_factor(site.error, suggestion.word, mode, lexicons.spelling, lexicons.history)
        ),
        abbreviation=float(abbreviation_factor(suggestion.word, lexicons.abbreviations)),
        domain=domain,
        general=general,
    )


def score_suggestions(
    suggestions: SuggestionList,
    lexicons: Lexicons,
    domain_index: CorpusIndex | None,
    general_index: CorpusIndex | None,
    mode: str,
) -> list[tuple[Suggestion, ScoreBreakdown]]:
    words = suggestions.words()
    return [
        (
            item,
            combined_score(
                item, suggestions.site, lexicons, domain_index, general_index, words, mode
            ),
        )
        for item in suggestions.items
    ]


def select_replacement(scored: list[tuple[Suggestion, ScoreBreakdown]]) -> Replacement:
    """Pick the argmax of the total; ties fall to lower rank, then lower index."""
    if not scored:
        raise ValueError("cannot select from an empty scored list")
    best_item, best_score = min(
        scored, key=lambda pair: (-pair[1].total, pair[0].rank, pair[0].element_index)
    )
    original = next(item.word for item, _ in scored if item.source == "identity")
    return Replacement(
        original=original,
        chosen=best_item.word,
        breakdown=best_score,
        all_scored=scored,
        changed=best_item.word != original,
        source=best_item.source,
    )
