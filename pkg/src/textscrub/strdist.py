"""String distances and phonetic keys used for candidate generation.

Two families of primitives live here:

* ``edit_distance`` / ``normalized_edit_distance`` implement the
  Damerau-Levenshtein metric (insertions, deletions, substitutions and
  adjacent transpositions, each costing one operation).
* ``soundex_key`` / ``phonetic_key`` reduce words to short consonant-class
  keys under which similarly pronounced words collide, which is what makes
  "near soundlike" candidate lookup possible.
"""

from __future__ import annotations

__all__ = [
    "NoPhoneticContent",
    "edit_distance",
    "normalized_edit_distance",
    "soundex_key",
    "phonetic_key",
]


class NoPhoneticContent(ValueError):
    """Raised when a phonetic key is requested for a string with no letters."""


def edit_distance(a: str, b: str) -> int:
    """Damerau-Levenshtein distance between two strings.

    Uses the unrestricted variant (a transposed pair may be edited again
    later), which unlike the "optimal string alignment" shortcut is a true
    metric: it is symmetric and satisfies the triangle inequality.

    Usage::

        >>> edit_distance("wear", "beard")
        2
        >>> edit_distance("cta", "cat")
        1
        >>> edit_distance("", "ab")
        2
    """
    if a == b:
        return 0
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la

    upper = la + lb
    width = lb + 2
    d = [[0] * width for _ in range(la + 2)]
    d[0][0] = upper
    for j in range(lb + 1):
        d[0][j + 1] = upper
        d[1][j + 1] = j
    for i in range(la + 1):
        d[i + 1][0] = upper
        d[i + 1][1] = i

    last_row: dict[str, int] = {}
    for i in range(1, la + 1):
        ca = a[i - 1]
        last_col = 0
        row = d[i + 1]
        prev = d[i]
        for j in range(1, lb + 1):
            cb = b[j - 1]
            k = last_row.get(cb, 0)
            m = last_col
            if ca == cb:
                cost = 0
                last_col = j
            else:
                cost = 1
            best = prev[j] + cost
            x = row[j] + 1
            if x < best:
                best = x
            x = prev[j + 1] + 1
            if x < best:
                best = x
            # transposition of ca/cb across the gap back to (k, m)
            x = d[k][m] + (i - k - 1) + 1 + (j - m - 1)
            if x < best:
                best = x
            row[j + 1] = best
        last_row[ca] = i
    return d[la + 1][lb + 1]


def normalized_edit_distance(e: str, s: str) -> float:
    """Similarity in (0, 1]: the reciprocal of (edit_distance + 1).

    Equals 1.0 exactly when the strings are identical and decreases
    strictly as the edit distance grows.
    """
    return 1.0 / (edit_distance(e, s) + 1)


# SOUNDEX letter classes. Vowels and the near-silent h/w/y map to 0, which
# is removed from the final key rather than padded to a fixed length.
_SOUNDEX_CODES: dict[str, str] = {}
for _letters, _digit in (
    ("aeiouhwy", "0"),
    ("bfpv", "1"),
    ("cgjkqsxz", "2"),
    ("dt", "3"),
    ("l", "4"),
    ("mn", "5"),
    ("r", "6"),
):
    for _ch in _letters:
        _SOUNDEX_CODES[_ch] = _digit


def _letters_of(w: str) -> list[str]:
    return [c for c in w.lower() if "a" <= c <= "z"]


def soundex_key(w: str) -> str:
    """Variable-length SOUNDEX key: first letter plus surviving digit codes.

    The remaining letters are coded by class, zeros are dropped and runs of
    equal digits are collapsed; no fixed-length padding is applied, so
    ``soundex_key("wear") == soundex_key("ware") == "w6"``.

    Raises :class:`NoPhoneticContent` if the input has no ASCII letters.
    """
    letters = _letters_of(w)
    if not letters:
        raise NoPhoneticContent("no phonetic content in %r" % (w,))
    digits = "".join(_SOUNDEX_CODES[c] for c in letters[1:])
    digits = digits.replace("0", "")
    collapsed = []
    for d in digits:
        if not collapsed or collapsed[-1] != d:
            collapsed.append(d)
    return letters[0] + "".join(collapsed)


# Digraphs are consumed before single letters; "0" encodes the th sound.
_KEY_DIGRAPHS = {
    "ph": "F",
    "th": "0",
    "sh": "X",
    "ch": "X",
    "ck": "K",
    "gh": "K",
}
_KEY_SINGLE = {
    "b": "B",
    "c": "K",
    "k": "K",
    "q": "K",
    "d": "T",
    "t": "T",
    "g": "J",
    "j": "J",
    "f": "F",
    "v": "F",
    "p": "P",
    "s": "S",
    "z": "S",
    "x": "KS",
    "m": "N",
    "n": "N",
    "l": "L",
    "r": "R",
}
_VOWELS = "aeiou"


def phonetic_key(w: str) -> str:
    """Metaphone-style soundlike key.

    Lowercases and keeps letters only, emits a leading vowel as ``A`` and
    drops the rest, maps digraphs before single consonants, drops w/h/y
    except word-initially, and finally collapses adjacent duplicates::

        >>> phonetic_key("cat") == phonetic_key("cta") == "KT"
        True
        >>> phonetic_key("phone")
        'FN'

    Raises :class:`NoPhoneticContent` if the input has no ASCII letters.
    """
    letters = _letters_of(w)
    if not letters:
        raise NoPhoneticContent("no phonetic content in %r" % (w,))
    out: list[str] = []
    i = 0
    n = len(letters)
    while i < n:
        pair = "".join(letters[i : i + 2])
        code = _KEY_DIGRAPHS.get(pair)
        if code is not None:
            out.append(code)
            i += 2
            continue
        c = letters[i]
        if c in _VOWELS:
            if i == 0:
                out.append("A")
        elif c in "why":
            if i == 0:
                out.append(c.upper())
        else:
            out.append(_KEY_SINGLE[c])
        i += 1
    joined = "".join(out)
    return "".join(ch for idx, ch in enumerate(joined) if idx == 0 or joined[idx - 1] != ch)
