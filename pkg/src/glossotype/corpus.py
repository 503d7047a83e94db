"""Corpus ingestion, cleaning and deterministic sampling.

Raw corpora are UTF-8 text files with one sentence per line (LF or CRLF).
Tagged corpora are a CoNLL-U subset: tab-separated token lines whose 4th
column is the UPOS tag, sentences separated by blank lines, comments
starting with '#'.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

from .errors import (
    EmptyCorpusError,
    EncodingError,
    MalformedLineError,
    UnknownTagError,
)
from .rng import Stream


class UposTag(enum.Enum):
    """The 17 universal part-of-speech tags accepted by this pipeline.

    The set is closed: parsing any other tag string is an error.
    """

    ADJ = "ADJ"
    ADP = "ADP"
    ADV = "ADV"
    AUX = "AUX"
    CCONJ = "CCONJ"
    DET = "DET"
    INTJ = "INTJ"
    NOUN = "NOUN"
    NUM = "NUM"
    PART = "PART"
    PRON = "PRON"
    PROPN = "PROPN"
    PUNCT = "PUNCT"
    SCONJ = "SCONJ"
    SYM = "SYM"
    VERB = "VERB"
    X = "X"

    def __str__(self) -> str:
        return self.value


TAG_INDEX: dict[UposTag, int] = {tag: i for i, tag in enumerate(UposTag)}
NUM_TAGS = len(UposTag)  # 17
X_INDEX = TAG_INDEX[UposTag.X]


@dataclass(frozen=True)
class RawSentence:
    text: str
    word_count: int

    @classmethod
    def from_text(cls, text: str) -> "RawSentence":
        return cls(text=text, word_count=len(text.split()))


@dataclass(frozen=True)
class PosSentence:
    tags: tuple[UposTag, ...]

    def encode(self) -> bytes:
        """Tag indices as bytes, the layout the counting kernels consume."""
        return bytes(TAG_INDEX[t] for t in self.tags)


Sentence = Union[RawSentence, PosSentence]


@dataclass(frozen=True)
class SentenceCorpus:
    language_code: str
    sentences: tuple[Sentence, ...]
    kind: str  # "raw" | "tagged"

    def __post_init__(self):
        if not self.language_code:
            raise ValueError("language_code must be non-empty")
        if self.kind not in ("raw", "tagged"):
            raise ValueError(f"unknown corpus kind {self.kind!r}")

    def __len__(self) -> int:
        return len(self.sentences)


def _decode_lines(path) -> Iterable[tuple[int, str]]:
    """Yield (1-based line number, decoded line) pairs.

    Lines are decoded individually so an invalid byte sequence can be
    reported with its line number instead of silently dropped.
    """
    data = Path(path).read_bytes()
    for i, raw in enumerate(data.split(b"\n"), start=1):
        if raw.endswith(b"\r"):
            raw = raw[:-1]
        try:
            yield i, raw.decode("utf-8")
        except UnicodeDecodeError as err:
            raise EncodingError(i, str(err)) from None


def load_raw_corpus(path, language_code: str) -> SentenceCorpus:
    """Read a one-sentence-per-line text file. Blank lines are skipped.

    No preprocessing is applied; callers run preprocess() themselves.
    """
    sentences = []
    for _, line in _decode_lines(path):
        if not line.strip():
            continue
        sentences.append(RawSentence.from_text(line))
    return SentenceCorpus(language_code=language_code, sentences=tuple(sentences), kind="raw")


_TAG_BY_NAME = {tag.value: tag for tag in UposTag}


def load_tagged_corpus(path, language_code: str) -> SentenceCorpus:
    """Read POS-tagged sentences from a CoNLL-U style file.

    Only the UPOS column (column 4) is consumed. Multiword-token range
    lines (ID like "3-4") and empty nodes (ID like "3.1") are skipped,
    as they do not carry a syntactic word of their own.
    """
    sentences: list[PosSentence] = []
    current: list[UposTag] = []

    def flush():
        if current:
            sentences.append(PosSentence(tags=tuple(current)))
            current.clear()

    for line_no, line in _decode_lines(path):
        stripped = line.strip()
        if not stripped:
            flush()
            continue
        if stripped.startswith("#"):
            continue
        columns = line.rstrip("\n").split("\t")
        if len(columns) < 4:
            raise MalformedLineError(line_no, f"expected >= 4 tab-separated columns, got {len(columns)}")
        token_id = columns[0]
        if "-" in token_id or "." in token_id:
            continue
        tag_name = columns[3]
        tag = _TAG_BY_NAME.get(tag_name)
        if tag is None:
            raise UnknownTagError(tag_name, line_no)
        current.append(tag)
    flush()
    return SentenceCorpus(language_code=language_code, sentences=tuple(sentences), kind="tagged")


def _normalize_text(text: str) -> str:
    # NFC + whitespace collapse; duplicate detection and word counts both
    # run on this normalized form.
    return " ".join(unicodedata.normalize("NFC", text).split())


def preprocess(corpus: SentenceCorpus, min_words: int = 3) -> SentenceCorpus:
    """Drop short sentences and duplicates, keeping first occurrences in order.

    Raw text is whitespace-normalized and NFC-normalized before comparison
    and is stored in that normalized form. For tagged corpora the length
    rule counts tags and duplicates are identical tag sequences.
    """
    seen = set()
    kept: list[Sentence] = []
    if corpus.kind == "raw":
        for sentence in corpus.sentences:
            text = _normalize_text(sentence.text)
            words = len(text.split())
            if words < min_words:
                continue
            if text in seen:
                continue
            seen.add(text)
            kept.append(RawSentence(text=text, word_count=words))
    else:
        for sentence in corpus.sentences:
            if len(sentence.tags) < min_words:
                continue
            if sentence.tags in seen:
                continue
            seen.add(sentence.tags)
            kept.append(sentence)
    return SentenceCorpus(language_code=corpus.language_code, sentences=tuple(kept), kind=corpus.kind)


def _char_in_scripts(ch: str, script_prefixes: tuple[str, ...]) -> bool:
    try:
        name = unicodedata.name(ch)
    except ValueError:
        return False
    return name.startswith(script_prefixes)


def filter_charset(corpus: SentenceCorpus, scripts: list[str]) -> SentenceCorpus:
    """Keep only sentences whose alphabetic characters belong to the given scripts.

    Script membership is approximated by Unicode character-name prefixes
    ("LATIN", "GREEK", "CYRILLIC", ...). Non-alphabetic characters (digits,
    punctuation, spaces) always pass. This is the cheap stand-in for an
    external language detector.
    """
    if corpus.kind != "raw":
        return corpus
    prefixes = tuple(s.upper() for s in scripts)
    kept = []
    for sentence in corpus.sentences:
        if all(_char_in_scripts(ch, prefixes) for ch in sentence.text if ch.isalpha()):
            kept.append(sentence)
    return SentenceCorpus(language_code=corpus.language_code, sentences=tuple(kept), kind=corpus.kind)


def sample_sentences(corpus: SentenceCorpus, n: int, seed: int) -> list[Sentence]:
    """Draw n sentences uniformly: without replacement when n <= len(corpus),
    with replacement otherwise. Identical seeds give identical samples on
    every platform (see rng module).
    """
    size = len(corpus.sentences)
    if size == 0:
        raise EmptyCorpusError(f"corpus {corpus.language_code!r} has no sentences")
    stream = Stream(seed)
    if n > size:
        indices = stream.choices_indices(size, n)
    else:
        indices = stream.sample_indices(size, n)
    return [corpus.sentences[i] for i in indices]
