"""Corpus ingestion: plain-text and EVA transliteration readers.

Both readers produce the same in-memory shape: a Corpus is an ordered
list of sentences, a sentence an ordered list of words, a word an
ordered list of graphemes. One source line becomes one sentence; lines
that are empty after normalization are dropped.

Graphemes are Unicode extended grapheme clusters for plain text (so
combining marks in Hebrew or Arabic stay attached to their base
character) and single characters for EVA transliterations.

Code points U+0001..U+0003 are reserved for internal serialization and
padding; input files containing them are rejected.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

import regex

from .errors import CorpusError, EmptyCorpusError

RESERVED_CODEPOINTS = ("", "", "")

_GRAPHEME_RE = regex.compile(r"\X")
_EVA_MARKUP_RE = regex.compile(r"<[^>]*>|\{[^}]*\}")
_EVA_ALTERNATES_RE = regex.compile(r"\[([^\]]*)\]")
_EVA_WORD_SEP_RE = regex.compile(r"[.,\s]+")
# Space fillers, illegible-glyph placeholders and layout codes seen in
# EVA transliteration files; dropped before graphemes are extracted.
_EVA_NOISE_RE = regex.compile(r"[^A-Za-z.,\s]")


Word = tuple[str, ...]


@dataclass(frozen=True)
class Sentence:
    """One source line: a non-empty ordered sequence of non-empty words."""

    words: tuple[Word, ...]
    origin_line: int

    def graphemes(self) -> tuple[str, ...]:
        return tuple(g for w in self.words for g in w)


@dataclass(frozen=True)
class Corpus:
    id: str
    sentences: tuple[Sentence, ...]

    def __len__(self) -> int:
        return len(self.sentences)

    def iter_words(self) -> Iterator[Word]:
        for sentence in self.sentences:
            yield from sentence.words

    def grapheme_count(self) -> int:
        return sum(len(w) for w in self.iter_words())


@dataclass(frozen=True)
class NormalizationProfile:
    """Plain-text normalization applied line by line before word splitting.

    The default profile case-folds, applies NFC, strips every code point
    in the Unicode punctuation (P*) and number (N*) categories plus
    non-whitespace control characters, and collapses whitespace runs.
    `keep` exempts individual characters (e.g. "'-" to retain
    apostrophes and hyphens).
    """

    casefold: bool = True
    strip_punctuation: bool = True
    strip_numbers: bool = True
    keep: str = ""

    def normalize_line(self, line: str) -> str:
        line = unicodedata.normalize("NFC", line)
        if self.casefold:
            line = line.casefold()
        kept = set(self.keep)
        out = []
        for ch in line:
            if ch in kept:
                out.append(ch)
                continue
            cat = unicodedata.category(ch)
            if self.strip_punctuation and cat.startswith("P"):
                continue
            if self.strip_numbers and cat.startswith("N"):
                continue
            if cat == "Cc" and not ch.isspace():
                continue
            out.append(ch)
        return "".join(out)


def split_graphemes(text: str) -> tuple[str, ...]:
    """Split a string into Unicode extended grapheme clusters."""
    return tuple(_GRAPHEME_RE.findall(text))


def _check_reserved(text: str, path: Path) -> None:
    for cp in RESERVED_CODEPOINTS:
        if cp in text:
            raise CorpusError(
                f"{path}: contains reserved code point U+{ord(cp):04X}"
            )


def _read_text(path: str | Path) -> tuple[Path, str]:
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise CorpusError(f"cannot read {p}: {exc}") from exc
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{p} is not valid UTF-8: {exc}") from exc
    _check_reserved(text, p)
    return p, text


def _build(sentences: list[Sentence], corpus_id: str, path: Path) -> Corpus:
    if not sentences:
        raise EmptyCorpusError(f"{path}: no sentences left after normalization")
    return Corpus(id=corpus_id, sentences=tuple(sentences))


def read_plaintext(
    path: str | Path,
    corpus_id: str,
    profile: NormalizationProfile | None = None,
) -> Corpus:
    """Read a newline-delimited UTF-8 text file into a Corpus.

    Each line is normalized with *profile*, split into words on
    whitespace runs, and each word into grapheme clusters. Lines with no
    words left are dropped; `origin_line` records the 1-based source line.
    """
    profile = profile or NormalizationProfile()
    p, text = _read_text(path)
    sentences: list[Sentence] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        words = tuple(
            split_graphemes(tok) for tok in profile.normalize_line(raw).split()
        )
        words = tuple(w for w in words if w)
        if words:
            sentences.append(Sentence(words=words, origin_line=lineno))
    return _build(sentences, corpus_id, p)


def read_eva(
    path: str | Path,
    corpus_id: str,
    variant_choice: int = 0,
) -> Corpus:
    """Read an EVA transliteration file into a Corpus.

    One transcription line becomes one sentence. Stripping rules:

    - `#`-initial lines are comments and are skipped whole;
    - `<...>` spans (locus/page markers, inline tags) and `{...}` spans
      (inline comments) are removed wherever they occur;
    - `[x:y:...]` alternate readings resolve to the alternative selected
      by *variant_choice* (0 = first);
    - any remaining character that is not an ASCII letter, `.`, `,` or
      whitespace (fillers such as `!` and `%`, illegible-glyph marks,
      layout codes) is dropped;
    - `.`, `,` and whitespace runs all separate words; each remaining
      letter is one grapheme.

    Lines with no words left are dropped.
    """
    if variant_choice < 0:
        raise CorpusError("variant_choice must be >= 0")
    p, text = _read_text(path)

    def pick_alternate(match: regex.Match) -> str:
        options = match.group(1).split(":")
        return options[min(variant_choice, len(options) - 1)]

    sentences: list[Sentence] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith("#"):
            continue
        line = _EVA_MARKUP_RE.sub("", raw)
        line = _EVA_ALTERNATES_RE.sub(pick_alternate, line)
        line = _EVA_NOISE_RE.sub("", line)
        words = tuple(
            tuple(tok) for tok in _EVA_WORD_SEP_RE.split(line) if tok
        )
        if words:
            sentences.append(Sentence(words=words, origin_line=lineno))
    return _build(sentences, corpus_id, p)


def corpus_from_words(
    sentences: Sequence[Sequence[Sequence[str]]], corpus_id: str = "inline"
) -> Corpus:
    """Build a Corpus directly from nested sequences (testing and synthesis)."""
    built = []
    for i, words in enumerate(sentences, start=1):
        if not words or any(not w for w in words):
            raise CorpusError("sentences and words must be non-empty")
        built.append(Sentence(words=tuple(tuple(w) for w in words), origin_line=i))
    if not built:
        raise EmptyCorpusError("no sentences given")
    return Corpus(id=corpus_id, sentences=tuple(built))
