"""Per-sentence grapheme streams and the two tokenization modes.

`baseline` flattens each sentence's words in reading order. `visual`
reverses the graphemes inside each word and then reverses the word
order, which models the on-page appearance of an RTL script; the result
equals the full reversal of the baseline flattening.

No separator token is inserted between words. Word boundaries are kept
out-of-band as per-sentence word-length tuples so that boundary
diagnostics and visual-mode round trips remain possible; shuffling
invalidates them (word_lengths becomes None).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, Literal

from .corpus import Corpus, Word
from .errors import CorpusError

Mode = Literal["baseline", "visual"]
DirectionLabel = Literal["as_read", "reversed"]


@dataclass(frozen=True)
class TokenStream:
    """Flattened grapheme sequences, one per sentence, in a declared direction."""

    corpus_id: str
    sentences: tuple[tuple[str, ...], ...]
    word_lengths: tuple[tuple[int, ...], ...] | None
    mode: Mode
    direction_label: DirectionLabel = "as_read"
    # Positions of these sentences in the source corpus; preserved by
    # reverse/shuffle and by train/test splitting.
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        if self.indices == ():
            object.__setattr__(self, "indices", tuple(range(len(self.sentences))))
        if len(self.indices) != len(self.sentences):
            raise CorpusError("indices and sentences length mismatch")
        if self.word_lengths is not None:
            for seq, lens in zip(self.sentences, self.word_lengths):
                if sum(lens) != len(seq):
                    raise CorpusError("word_lengths inconsistent with sentence length")

    def __len__(self) -> int:
        return len(self.sentences)

    def grapheme_count(self) -> int:
        return sum(len(s) for s in self.sentences)

    def vocabulary(self) -> frozenset[str]:
        return frozenset(g for s in self.sentences for g in s)

    def iter_words(self) -> Iterator[Word]:
        """Reconstruct words from the boundary metadata."""
        if self.word_lengths is None:
            raise CorpusError("word boundaries are not available on this stream")
        for seq, lens in zip(self.sentences, self.word_lengths):
            pos = 0
            for ln in lens:
                yield tuple(seq[pos : pos + ln])
                pos += ln


def tokenize(corpus: Corpus, mode: Mode = "baseline") -> TokenStream:
    """Flatten a corpus into per-sentence grapheme sequences."""
    if mode not in ("baseline", "visual"):
        raise CorpusError(f"unknown tokenization mode: {mode!r}")
    seqs: list[tuple[str, ...]] = []
    lens: list[tuple[int, ...]] = []
    for sentence in corpus.sentences:
        if mode == "baseline":
            words = sentence.words
        else:
            words = tuple(w[::-1] for w in sentence.words[::-1])
        seqs.append(tuple(g for w in words for g in w))
        lens.append(tuple(len(w) for w in words))
    return TokenStream(
        corpus_id=corpus.id,
        sentences=tuple(seqs),
        word_lengths=tuple(lens),
        mode=mode,
    )


def reverse_stream(ts: TokenStream) -> TokenStream:
    """Reverse every sentence's grapheme sequence and toggle the direction label."""
    label: DirectionLabel = "reversed" if ts.direction_label == "as_read" else "as_read"
    return replace(
        ts,
        sentences=tuple(s[::-1] for s in ts.sentences),
        word_lengths=None
        if ts.word_lengths is None
        else tuple(lens[::-1] for lens in ts.word_lengths),
        direction_label=label,
    )
