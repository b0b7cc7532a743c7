"""Turn raw documents into tokenized sentences with non-word content set aside.

The stages mirror the front of the cleaning pipeline: markup stripping,
extraction of URLs / emails / emoticons / space-aligned tables behind opaque
placeholders, sentence boundary detection tuned for chat turns, and a
whitespace tokenizer that peels boundary punctuation.

Placeholders have the form ``⟦KIND:n⟧`` where ``n`` indexes the extracted
entities of a document. They are opaque to the tokenizer and to every later
stage, and :func:`restore_entities` splices the original content back in.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from html import unescape
from html.parser import HTMLParser
from importlib import resources
from typing import Iterable, Sequence

__all__ = [
    "RawDocument",
    "ExtractedEntity",
    "Sentence",
    "Token",
    "strip_markup",
    "extract_entities",
    "detect_tables",
    "split_sentences",
    "tokenize",
    "restore_entities",
    "is_placeholder",
    "default_emoticons",
    "load_emoticons",
]

logger = logging.getLogger(__name__)

PLACEHOLDER_RE = re.compile(r"⟦(URL|EMAIL|EMOTICON|TABLE):(\d+)⟧")

_URL_RE = re.compile(r"(?:https?|ftp)://[^\s⟦⟧]+|\bwww\.[^\s⟦⟧]+", re.IGNORECASE)
_EMAIL_RE = re.compile(r"[A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,}")

# Punctuation that commonly trails a URL without belonging to it.
_TRAILING_PUNCT = ".,;:!?)]}'\""

# Internal runs of two or more spaces; candidates for table column gaps.
_GAP_RE = re.compile(r"  +")

# Sentence-final punctuation followed by whitespace; the following character
# must be an uppercase letter for a boundary to be declared.
_BOUNDARY_RE = re.compile(r"([.!?]+)(\s+)")

# Period-terminated words that do not end a sentence.
_NON_FINAL_ABBREVS = frozenset(
    """mr mrs ms dr prof sr jr st etc e.g i.e cf vs inc ltd co corp mt capt
    gen col sgt lt rev hon fig no dept univ est approx jan feb mar apr jun
    jul aug sep sept oct nov dec""".split()
)


@dataclass
class RawDocument:
    """One input document prior to any processing."""

    id: str
    body: str
    source_format: str = "plain"  # plain | html | xml


@dataclass
class ExtractedEntity:
    """A non-word artifact replaced by a placeholder in the masked text.

    ``span`` holds half-open character offsets into the pre-masking text and
    ``text`` is exactly the slice at that span.
    """

    kind: str  # url | email | emoticon | table
    span: tuple[int, int]
    text: str


@dataclass
class Sentence:
    """One sentence of a document, with its slice of the masked text."""

    text: str
    doc_id: str = ""
    index: int = 0
    span: tuple[int, int] = (0, 0)


@dataclass
class Token:
    """One token of a sentence; ``char_span`` indexes the sentence text."""

    text: str
    position: int
    char_span: tuple[int, int]


_BLOCK_TAGS = frozenset(
    """p div br li ul ol tr td th table h1 h2 h3 h4 h5 h6 blockquote pre
    section article header footer form hr dl dt dd caption thead tbody""".split()
)

# Sentinel inserted where a block-level tag used to be; collapsed afterwards.
_SEP = "\x00"
_SEP_RUN_RE = re.compile(r"\s*\x00[\x00\s]*")


class _TagStripper(HTMLParser):
    """Collects text content, replacing block-level tags with separators."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []

    def handle_data(self, data: str) -> None:
        self.parts.append(data)

    def handle_starttag(self, tag: str, attrs) -> None:
        if tag in _BLOCK_TAGS:
            self.parts.append(_SEP)

    def handle_endtag(self, tag: str) -> None:
        if tag in _BLOCK_TAGS:
            self.parts.append(_SEP)

    def handle_startendtag(self, tag: str, attrs) -> None:
        if tag in _BLOCK_TAGS:
            self.parts.append(_SEP)

    def handle_unknown_decl(self, data: str) -> None:
        # Keep CDATA payloads; XML chat exports wrap message text in them.
        if data.startswith("CDATA["):
            self.parts.append(data[6:])


def _collapse_separators(match: re.Match) -> str:
    return "\n" if "\n" in match.group(0) else " "


def strip_markup(doc: RawDocument | str) -> str:
    """Remove HTML/XML tags and decode character references.

    Inline tags vanish, block-level tags become a single separator (a space,
    or a newline when the tag already sat next to one), and text content is
    preserved in order. Malformed markup is stripped best-effort; the
    function never raises on bad input.
    """
    text = doc.body if isinstance(doc, RawDocument) else doc
    parser = _TagStripper()
    try:
        parser.feed(text)
        parser.close()
        joined = "".join(parser.parts)
    except Exception:  # pragma: no cover - HTMLParser rarely raises
        logger.warning("markup parser failed; falling back to regex strip")
        joined = unescape(re.sub(r"<[^>]*>", _SEP, text))
    return _SEP_RUN_RE.sub(_collapse_separators, joined).strip()


def default_emoticons() -> list[str]:
    """The packaged emoticon inventory (one emoticon per line)."""
    data = resources.files("textscrub").joinpath("data/emoticons.txt").read_text("utf-8")
    return [line.strip() for line in data.splitlines() if line.strip()]


def load_emoticons(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def _gap_columns(line: str) -> list[int]:
    """Start columns of internal multi-space runs (table column gaps)."""
    cols = []
    for m in _GAP_RE.finditer(line):
        if line[: m.start()].strip() and line[m.end() :].strip():
            cols.append(m.start())
    return cols


def _columns_agree(a: list[int], b: list[int]) -> bool:
    """True when at least two gap columns line up within one column."""
    matches = 0
    i = j = 0
    while i < len(a) and j < len(b):
        if abs(a[i] - b[j]) <= 1:
            matches += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return matches >= 2


def detect_tables(lines: Sequence[str]) -> list[tuple[int, int]]:
    """Find maximal runs of space-aligned columnar lines.

    A span [start, end) is reported when two or more consecutive lines each
    contain at least two internal runs of two or more spaces and those runs
    start at columns that agree within one column between neighbours.
    """
    cols = [_gap_columns(line) for line in lines]
    qualifies = [len(c) >= 2 for c in cols]
    spans = []
    i = 0
    n = len(lines)
    while i < n - 1:
        if qualifies[i] and qualifies[i + 1] and _columns_agree(cols[i], cols[i + 1]):
            j = i + 1
            while j + 1 < n and qualifies[j + 1] and _columns_agree(cols[j], cols[j + 1]):
                j += 1
            spans.append((i, j + 1))
            i = j + 1
        else:
            i += 1
    return spans


def _overlaps(span: tuple[int, int], others: Iterable[tuple[int, int]]) -> bool:
    s, e = span
    return any(s < oe and os_ < e for os_, oe in others)


def _emoticon_regex(inventory: Sequence[str]) -> re.Pattern | None:
    if not inventory:
        return None
    alternatives = "|".join(re.escape(e) for e in sorted(set(inventory), key=lambda x: (-len(x), x)))
    # Emoticons stand alone between whitespace (or text boundaries).
    return re.compile(r"(?<!\S)(?:%s)(?!\S)" % alternatives)


def extract_entities(
    text: str, emoticons: Sequence[str] | None = None
) -> tuple[str, list[ExtractedEntity]]:
    """Replace URLs, emails, emoticons and tables by opaque placeholders.

    Returns the masked text and the extracted entities ordered by position.
    Entity ``n`` is represented in the masked text by ``⟦KIND:n⟧`` and
    re-inserting every entity text at its placeholder reproduces the input
    exactly (see :func:`restore_entities`).
    """
    if emoticons is None:
        emoticons = default_emoticons()

    candidates: list[tuple[tuple[int, int], str]] = []
    for m in _URL_RE.finditer(text):
        raw = m.group(0)
        trimmed = raw.rstrip(_TRAILING_PUNCT)
        if trimmed:
            candidates.append(((m.start(), m.start() + len(trimmed)), "url"))
    for m in _EMAIL_RE.finditer(text):
        if not _overlaps((m.start(), m.end()), (s for s, _ in candidates)):
            candidates.append(((m.start(), m.end()), "email"))
    emo_re = _emoticon_regex(emoticons)
    if emo_re is not None:
        for m in emo_re.finditer(text):
            if not _overlaps((m.start(), m.end()), (s for s, _ in candidates)):
                candidates.append(((m.start(), m.end()), "emoticon"))
    candidates.sort(key=lambda item: item[0])

    # Tables are detected on the candidate-masked lines (shortened URLs can
    # only narrow gaps, never invent them), then mapped back onto the
    # original line offsets; masked candidates inside a table are subsumed.
    provisional = _mask(text, [(span, kind) for span, kind in candidates])
    line_starts = [0]
    for m in re.finditer(r"\n", text):
        line_starts.append(m.end())
    orig_lines = text.split("\n")
    table_spans = []
    for start_line, end_line in detect_tables(provisional.split("\n")):
        start = line_starts[start_line]
        end = line_starts[end_line - 1] + len(orig_lines[end_line - 1])
        table_spans.append((start, end))

    final: list[tuple[tuple[int, int], str]] = [(span, "table") for span in table_spans]
    for span, kind in candidates:
        if not _overlaps(span, table_spans):
            final.append((span, kind))
    final.sort(key=lambda item: item[0])

    entities = [ExtractedEntity(kind, span, text[span[0] : span[1]]) for span, kind in final]
    masked = _mask(text, final)
    return masked, entities


def _mask(text: str, spans: list[tuple[tuple[int, int], str]]) -> str:
    out = []
    prev = 0
    for n, ((start, end), kind) in enumerate(spans):
        out.append(text[prev:start])
        out.append("⟦%s:%d⟧" % (kind.upper(), n))
        prev = end
    out.append(text[prev:])
    return "".join(out)


def restore_entities(masked: str, entities: Sequence[ExtractedEntity]) -> str:
    """Replace every ``⟦KIND:n⟧`` placeholder by entity ``n``'s text."""

    def _restore(m: re.Match) -> str:
        n = int(m.group(2))
        if n < len(entities):
            return entities[n].text
        return m.group(0)

    return PLACEHOLDER_RE.sub(_restore, masked)


def is_placeholder(token_text: str) -> bool:
    return PLACEHOLDER_RE.fullmatch(token_text) is not None


def _word_before(line: str, end: int) -> str:
    start = end
    while start > 0 and not line[start - 1].isspace():
        start -= 1
    return line[start:end]


def split_sentences(text: str, doc_id: str = "") -> list[Sentence]:
    """Split masked text into sentences.

    Line breaks always split (chat turns rarely carry punctuation), and
    within a line a boundary is declared after ``.``/``!``/``?`` followed by
    whitespace and an uppercase letter, unless the period terminates a known
    abbreviation or a single-letter initial.
    """
    sentences: list[Sentence] = []
    for line_match in re.finditer(r"[^\r\n]+", text):
        line = line_match.group(0)
        base = line_match.start()
        seg_start = 0
        bounds = []
        for m in _BOUNDARY_RE.finditer(line):
            nxt = m.end()
            if nxt >= len(line) or not line[nxt].isupper():
                continue
            if m.group(1).startswith("."):
                word = _word_before(line, m.start()).lstrip("('\"[")
                lowered = word.lower()
                if lowered in _NON_FINAL_ABBREVS or (len(word) == 1 and word.isalpha()):
                    continue
            bounds.append((m.start() + len(m.group(1)), nxt))
        for end, nxt in bounds:
            bounds_text = line[seg_start:end]
            if bounds_text.strip():
                sentences.append(_trimmed_sentence(bounds_text, base + seg_start, doc_id, len(sentences)))
            seg_start = nxt
        tail = line[seg_start:]
        if tail.strip():
            sentences.append(_trimmed_sentence(tail, base + seg_start, doc_id, len(sentences)))
    return sentences


def _trimmed_sentence(raw: str, offset: int, doc_id: str, index: int) -> Sentence:
    stripped = raw.strip()
    lead = len(raw) - len(raw.lstrip())
    start = offset + lead
    return Sentence(stripped, doc_id, index, (start, start + len(stripped)))


def _is_punct_char(c: str) -> bool:
    return not c.isalnum() and not c.isspace() and c not in "⟦⟧"


def _emit_plain(chunk: str, base: int, out: list[tuple[str, tuple[int, int]]]) -> None:
    start, end = 0, len(chunk)
    while start < end and _is_punct_char(chunk[start]):
        start += 1
    if start > 0:
        out.append((chunk[:start], (base, base + start)))
    trail = end
    while trail > start and _is_punct_char(chunk[trail - 1]):
        trail -= 1
    if trail > start:
        out.append((chunk[start:trail], (base + start, base + trail)))
    if trail < end:
        out.append((chunk[trail:end], (base + trail, base + end)))


def tokenize(sentence: Sentence | str) -> list[Token]:
    """Tokenize on whitespace, peeling leading/trailing punctuation runs.

    Internal apostrophes and hyphens stay inside their token and
    ``⟦KIND:n⟧`` placeholders are kept intact.
    """
    text = sentence.text if isinstance(sentence, Sentence) else sentence
    pieces: list[tuple[str, tuple[int, int]]] = []
    for m in re.finditer(r"\S+", text):
        chunk, base = m.group(0), m.start()
        prev = 0
        for pm in PLACEHOLDER_RE.finditer(chunk):
            if pm.start() > prev:
                _emit_plain(chunk[prev : pm.start()], base + prev, pieces)
            pieces.append((pm.group(0), (base + pm.start(), base + pm.end())))
            prev = pm.end()
        if prev < len(chunk):
            _emit_plain(chunk[prev:], base + prev, pieces)
    return [Token(txt, pos, span) for pos, (txt, span) in enumerate(pieces)]
