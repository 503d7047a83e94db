"""Script-to-Latin transliteration and diacritic stripping.

The goal is comparability of character n-grams across alphabets, not
phonetic fidelity: table-driven longest-match replacement, then diacritic
stripping, then lowercasing. Anything still outside ASCII degrades to "?".

Bundled tables (data/tables/*.json) cover Greek, Cyrillic, Korean jamo,
Arabic, Hebrew and Devanagari; unmapped scripts (e.g. CJK ideographs)
come out as "?".
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .corpus import RawSentence, SentenceCorpus


@dataclass(frozen=True)
class TranslitTable:
    script_name: str
    # (source sequence, ASCII-letter replacement), sorted longest-first so
    # greedy matching is longest-match by construction
    entries: tuple[tuple[str, str], ...]

    @classmethod
    def from_entries(cls, script_name: str, entries) -> "TranslitTable":
        normalized = []
        for source, replacement in entries:
            if not source:
                raise ValueError(f"table {script_name!r}: empty source sequence")
            if not all("a" <= c <= "z" or "A" <= c <= "Z" for c in replacement):
                raise ValueError(
                    f"table {script_name!r}: replacement {replacement!r} for {source!r} "
                    "must contain ASCII letters only"
                )
            normalized.append((source, replacement))
        normalized.sort(key=lambda e: (-len(e[0]), e[0]))
        return cls(script_name=script_name, entries=tuple(normalized))


def load_table(path) -> TranslitTable:
    """Load a {script_name, entries: [[source, replacement], ...]} JSON file."""
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    return TranslitTable.from_entries(payload["script_name"], payload["entries"])


def bundled_tables() -> list[TranslitTable]:
    """All transliteration tables shipped with the package, in name order."""
    tables = []
    root = resources.files("glossotype").joinpath("data/tables")
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            payload = json.loads(entry.read_text(encoding="utf-8"))
            tables.append(TranslitTable.from_entries(payload["script_name"], payload["entries"]))
    return tables


def strip_diacritics(text: str) -> str:
    """Remove combining marks: decompose, drop marks, recompose."""
    decomposed = unicodedata.normalize("NFD", text)
    stripped = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    return unicodedata.normalize("NFC", stripped)


# Hangul syllable arithmetic (Unicode chapter 3.12): syllables U+AC00..U+D7A3
# decompose into leading/vowel/trailing conjoining jamo.
_HANGUL_BASE = 0xAC00
_HANGUL_END = 0xD7A3
_JAMO_L_BASE, _JAMO_V_BASE, _JAMO_T_BASE = 0x1100, 0x1161, 0x11A7
_V_COUNT, _T_COUNT = 21, 28


def _decompose_hangul(text: str) -> str:
    if not any(_HANGUL_BASE <= ord(ch) <= _HANGUL_END for ch in text):
        return text
    out = []
    for ch in text:
        code = ord(ch)
        if _HANGUL_BASE <= code <= _HANGUL_END:
            index = code - _HANGUL_BASE
            out.append(chr(_JAMO_L_BASE + index // (_V_COUNT * _T_COUNT)))
            out.append(chr(_JAMO_V_BASE + (index % (_V_COUNT * _T_COUNT)) // _T_COUNT))
            trailing = index % _T_COUNT
            if trailing:
                out.append(chr(_JAMO_T_BASE + trailing))
        else:
            out.append(ch)
    return "".join(out)


def _build_matcher(tables: list[TranslitTable]) -> dict[str, list[tuple[str, str]]]:
    # first character of the source -> candidate (source, replacement) pairs,
    # longest source first; earlier tables win on equal keys
    matcher: dict[str, list[tuple[str, str]]] = {}
    seen = set()
    for table in tables:
        for source, replacement in table.entries:
            if source in seen:
                continue
            seen.add(source)
            matcher.setdefault(source[0], []).append((source, replacement))
    for candidates in matcher.values():
        candidates.sort(key=lambda e: (-len(e[0]), e[0]))
    return matcher


class Transliterator:
    """Reusable transliterator with the match index built once."""

    def __init__(self, tables: list[TranslitTable]):
        self._matcher = _build_matcher(tables)

    def __call__(self, text: str) -> str:
        text = _decompose_hangul(text)
        matcher = self._matcher
        parts = []
        i = 0
        length = len(text)
        while i < length:
            candidates = matcher.get(text[i])
            if candidates:
                for source, replacement in candidates:
                    if text.startswith(source, i):
                        parts.append(replacement)
                        i += len(source)
                        break
                else:
                    parts.append(text[i])
                    i += 1
            else:
                parts.append(text[i])
                i += 1
        result = strip_diacritics("".join(parts)).lower()
        return "".join(ch if ord(ch) < 128 else "?" for ch in result)


def transliterate(text: str, tables: list[TranslitTable]) -> str:
    """Convert text to lowercase diacritics-free ASCII.

    Greedy longest-match replacement from the tables, then diacritic
    stripping, then lowercase folding; every remaining non-ASCII character
    becomes "?". The result is always pure ASCII and transliterating it
    again is a no-op.
    """
    return Transliterator(tables)(text)


def transliterate_corpus(corpus: SentenceCorpus, tables: list[TranslitTable]) -> SentenceCorpus:
    """Transliterate every sentence of a raw corpus."""
    if corpus.kind != "raw":
        raise ValueError("only raw corpora can be transliterated")
    convert = Transliterator(tables)
    sentences = tuple(RawSentence.from_text(convert(s.text)) for s in corpus.sentences)
    return SentenceCorpus(language_code=corpus.language_code, sentences=sentences, kind="raw")
