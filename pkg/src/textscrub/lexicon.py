"""Dictionaries backing correction: words, abbreviations, learned spellings.

All four stores serialize to UTF-8 tab-separated files with sorted keys, so
saving and re-loading is byte-identical.

File formats::

    words:         word<TAB>freq[<TAB>P]          (P flags a proper noun)
    abbreviations: abbrev<TAB>expansion1|expansion2|...
    spellings:     error<TAB>suggestion<TAB>auto|user
    history:       error<TAB>replacement
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = [
    "WordEntry",
    "WordDict",
    "AbbreviationDict",
    "SpellingDict",
    "CorrectionHistory",
    "Lexicons",
]


@dataclass
class WordEntry:
    surface: str
    frequency: int = 1
    proper: bool = False


class WordDict:
    """Case-insensitive word list with frequencies and canonical surfaces.

    The stored surface form drives case restoration: when ``Jones`` is
    flagged as a proper noun, candidate generation for ``jones`` yields
    ``Jones``.
    """

    def __init__(self) -> None:
        self._entries: dict[str, WordEntry] = {}

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def add(self, surface: str, frequency: int = 1, proper: bool = False) -> None:
        self._entries[surface.lower()] = WordEntry(surface, frequency, proper)

    def lookup(self, word: str) -> WordEntry | None:
        return self._entries.get(word.lower())

    def surface(self, word: str) -> str | None:
        entry = self._entries.get(word.lower())
        return entry.surface if entry else None

    def frequency(self, word: str) -> int:
        entry = self._entries.get(word.lower())
        return entry.frequency if entry else 0

    def entries(self) -> list[WordEntry]:
        return [self._entries[k] for k in sorted(self._entries)]

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for entry in self.entries():
                cols = [entry.surface, str(entry.frequency)]
                if entry.proper:
                    cols.append("P")
                fh.write("\t".join(cols) + "\n")

    @classmethod
    def load(cls, path: str) -> "WordDict":
        d = cls()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                cols = line.split("\t")
                freq = int(cols[1]) if len(cols) > 1 and cols[1] else 1
                proper = len(cols) > 2 and cols[2] == "P"
                d.add(cols[0], freq, proper)
        return d


class AbbreviationDict:
    """Abbreviation to expansion lists, matched case-insensitively."""

    def __init__(self) -> None:
        self._entries: dict[str, list[str]] = {}

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def add(self, abbrev: str, expansions: list[str]) -> None:
        seen: list[str] = []
        for e in expansions:
            if e and e not in seen:
                seen.append(e)
        if not seen:
            raise ValueError("expansion list for %r is empty" % abbrev)
        self._entries[abbrev.lower()] = seen

    def lookup(self, abbrev: str) -> list[str]:
        """Expansions for ``abbrev`` in stored order; empty when unknown."""
        return list(self._entries.get(abbrev.lower(), ()))

    def keys(self) -> list[str]:
        return sorted(self._entries)

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for key in sorted(self._entries):
                fh.write("%s\t%s\n" % (key, "|".join(self._entries[key])))

    @classmethod
    def load(cls, path: str) -> "AbbreviationDict":
        d = cls()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                key, _, rest = line.partition("\t")
                d.add(key, [e for e in rest.split("|") if e])
        return d


class SpellingDict:
    """One remembered suggestion per error word.

    Entries recorded automatically (from the context suggester) never
    overwrite entries a user added by hand.
    """

    AUTO = "auto"
    USER = "user"

    def __init__(self) -> None:
        self._entries: dict[str, tuple[str, str]] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def lookup(self, error: str) -> str | None:
        entry = self._entries.get(error)
        return entry[0] if entry else None

    def source(self, error: str) -> str | None:
        entry = self._entries.get(error)
        return entry[1] if entry else None

    def record_auto(self, error: str, suggestion: str) -> None:
        if not suggestion:
            raise ValueError("empty suggestion")
        existing = self._entries.get(error)
        if existing is not None and existing[1] == self.USER:
            return
        self._entries[error] = (suggestion, self.AUTO)

    def record_user(self, error: str, suggestion: str) -> None:
        if not suggestion:
            raise ValueError("empty suggestion")
        self._entries[error] = (suggestion, self.USER)

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for key in sorted(self._entries):
                suggestion, source = self._entries[key]
                fh.write("%s\t%s\t%s\n" % (key, suggestion, source))

    @classmethod
    def load(cls, path: str) -> "SpellingDict":
        d = cls()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                error, suggestion, source = line.split("\t")
                if source == cls.USER:
                    d.record_user(error, suggestion)
                else:
                    d.record_auto(error, suggestion)
        return d


class CorrectionHistory:
    """Legacy record of past replacements, consulted in basic mode only."""

    def __init__(self) -> None:
        self._entries: dict[str, str] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def record(self, error: str, replacement: str) -> None:
        self._entries[error] = replacement

    def reuse(self, error: str, suggestion: str) -> int:
        """1 when ``error`` was previously corrected to ``suggestion``."""
        return 1 if self._entries.get(error) == suggestion else 0

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for key in sorted(self._entries):
                fh.write("%s\t%s\n" % (key, self._entries[key]))

    @classmethod
    def load(cls, path: str) -> "CorrectionHistory":
        h = cls()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                error, _, replacement = line.partition("\t")
                h.record(error, replacement)
        return h


def history_reuse(error: str, suggestion: str, history: CorrectionHistory) -> int:
    return history.reuse(error, suggestion)


@dataclass
class Lexicons:
    """The dictionary bundle a cleaning run works against."""

    words: WordDict = field(default_factory=WordDict)
    abbreviations: AbbreviationDict = field(default_factory=AbbreviationDict)
    spelling: SpellingDict = field(default_factory=SpellingDict)
    history: CorrectionHistory = field(default_factory=CorrectionHistory)
