"""Seeded synthetic corpora for null and power testing.

Three source kinds:

- uniform_iid: exchangeable graphemes; no reading direction exists, so
  measured asymmetry should straddle zero. The null for the pipeline.
- markov_biased: a first-order chain whose rows are Dirichlet draws
  sharpened by bias_strength toward a fixed random permutation's
  successor. A stationary chain is statistically direction-symmetric
  at any modeled order, so the directional signal is injected through
  the sentence edges: sentences start at a designated start grapheme
  with probability bias_strength, and the chain's in-flow into that
  grapheme is damped by the same factor. Read as generated, the
  forward direction is the more predictable one (delta < 0).
- zipf_words: words drawn from a fixed random lexicon with probability
  proportional to 1/rank; exercises heavy-tailed rank-frequency shapes.

Generation is fully deterministic under the spec seed. Corpora are
emitted with single-character graphemes drawn from a case-stable,
NFC-stable palette so that writing to a plain-text file and re-reading
it reproduces the corpus exactly.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np

from .corpus import Corpus, Sentence
from .errors import ConfigError
from .seeds import generator

Kind = Literal["uniform_iid", "markov_biased", "zipf_words"]

# Lowercase-only, casefold- and NFC-stable single code points (ASCII,
# Greek without final sigma, Cyrillic).
_PALETTE = (
    string.ascii_lowercase
    + "".join(chr(c) for c in range(0x03B1, 0x03CA) if c != 0x03C2)
    + "".join(chr(c) for c in range(0x0430, 0x0450))
)

_WORD_LEN_RANGE = (2, 7)
_ZIPF_LEXICON_SIZE = 1000


@dataclass(frozen=True)
class SynthSpec:
    kind: Kind
    vocab_size: int = 20
    sentences: int = 1000
    sentence_length: tuple[int, int] = (20, 40)
    bias_strength: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("uniform_iid", "markov_biased", "zipf_words"):
            raise ConfigError(f"unknown synthetic kind: {self.kind!r}")
        if not 2 <= self.vocab_size <= len(_PALETTE):
            raise ConfigError(
                f"vocab_size must be in [2, {len(_PALETTE)}], got {self.vocab_size}"
            )
        if self.sentences < 1:
            raise ConfigError("sentences must be >= 1")
        lo, hi = self.sentence_length
        if not 1 <= lo <= hi:
            raise ConfigError(f"bad sentence_length range: {self.sentence_length}")
        if not 0.0 <= self.bias_strength <= 1.0:
            raise ConfigError("bias_strength must be in [0, 1]")


def _chunk_into_words(graphemes: list[str], rng: np.random.Generator) -> tuple:
    words = []
    pos = 0
    total = len(graphemes)
    while pos < total:
        ln = int(rng.integers(_WORD_LEN_RANGE[0], _WORD_LEN_RANGE[1] + 1))
        words.append(tuple(graphemes[pos : pos + ln]))
        pos += ln
    return tuple(words)


def _uniform_iid(spec: SynthSpec, rng: np.random.Generator) -> list[tuple]:
    alphabet = _PALETTE[: spec.vocab_size]
    lo, hi = spec.sentence_length
    sentences = []
    for _ in range(spec.sentences):
        length = int(rng.integers(lo, hi + 1))
        ids = rng.integers(0, spec.vocab_size, size=length)
        sentences.append(_chunk_into_words([alphabet[i] for i in ids], rng))
    return sentences


def _markov_biased(spec: SynthSpec, rng: np.random.Generator) -> list[tuple]:
    v = spec.vocab_size
    b = spec.bias_strength
    alphabet = _PALETTE[:v]
    start = 0

    perm = rng.permutation(v)
    rows = rng.dirichlet(np.ones(v), size=v)
    for i in range(v):
        rows[i] = (1.0 - b) * rows[i]
        rows[i][perm[i]] += b
    # Damp in-flow into the start grapheme so it stays edge-specific.
    rows[:, start] *= 1.0 - b
    rows /= rows.sum(axis=1, keepdims=True)

    initial = np.full(v, (1.0 - b) / v)
    initial[start] += b

    lo, hi = spec.sentence_length
    sentences = []
    for _ in range(spec.sentences):
        length = int(rng.integers(lo, hi + 1))
        state = int(rng.choice(v, p=initial))
        ids = [state]
        for _ in range(length - 1):
            state = int(rng.choice(v, p=rows[state]))
            ids.append(state)
        sentences.append(_chunk_into_words([alphabet[i] for i in ids], rng))
    return sentences


def _zipf_words(spec: SynthSpec, rng: np.random.Generator) -> list[tuple]:
    alphabet = _PALETTE[: spec.vocab_size]
    lexicon: list[tuple[str, ...]] = []
    seen = set()
    while len(lexicon) < _ZIPF_LEXICON_SIZE:
        ln = int(rng.integers(_WORD_LEN_RANGE[0], _WORD_LEN_RANGE[1] + 1))
        word = tuple(alphabet[int(i)] for i in rng.integers(0, spec.vocab_size, ln))
        if word not in seen:
            seen.add(word)
            lexicon.append(word)
    weights = 1.0 / np.arange(1, _ZIPF_LEXICON_SIZE + 1)
    weights /= weights.sum()

    lo, hi = spec.sentence_length
    sentences = []
    for _ in range(spec.sentences):
        count = int(rng.integers(lo, hi + 1))
        picks = rng.choice(_ZIPF_LEXICON_SIZE, size=count, p=weights)
        sentences.append(tuple(lexicon[int(i)] for i in picks))
    return sentences


def generate(spec: SynthSpec, corpus_id: str | None = None) -> Corpus:
    """Generate a corpus for *spec*; deterministic under spec.seed.

    sentence_length is in graphemes for uniform_iid and markov_biased
    and in words for zipf_words.
    """
    rng = generator(spec.seed)
    if spec.kind == "uniform_iid":
        sentences = _uniform_iid(spec, rng)
    elif spec.kind == "markov_biased":
        sentences = _markov_biased(spec, rng)
    else:
        sentences = _zipf_words(spec, rng)
    built = tuple(
        Sentence(words=words, origin_line=i)
        for i, words in enumerate(sentences, start=1)
    )
    return Corpus(id=corpus_id or f"synth-{spec.kind}", sentences=built)


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus as plain text: words joined by spaces, one sentence per line."""
    lines = (
        " ".join("".join(w) for w in sentence.words)
        for sentence in corpus.sentences
    )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
