"""Train/test validation: per-sentence reading-direction classification.

Sentences are split 80/20 (by default) at random. A forward model is
trained on the training sentences and a backward model on their
reversals. Each held-out sentence is scored in both directions and
classified LTR when the forward log-probability is strictly higher,
RTL otherwise (ties go to RTL). Accuracy is measured against a
caller-supplied gold orientation; sentences with no prediction tokens
(shorter than n) are excluded from the denominator and reported
separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace as dc_replace
from typing import Literal

from .errors import CorpusError, NumericError
from .ngram import SmoothingSpec, count_ngrams, sentence_logprob
from .seeds import generator
from .streams import TokenStream, reverse_stream

Direction = Literal["ltr", "rtl"]


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise CorpusError("train_fraction must be in (0, 1)")


@dataclass
class PredictionOutcome:
    corpus_id: str
    n: int
    smoothing: SmoothingSpec
    gold: Direction
    split_seed: int
    train_sentences: int
    test_sentences: int  # scored test sentences (>= 1 prediction token)
    excluded_short: int
    accuracy: float
    delta_test: float  # X_LTR - X_RTL over the scored test sentences
    # (sentence index, logprob fwd, logprob of reversal under backward model, predicted)
    per_sentence: list[tuple[int, float, float, Direction]] = field(
        repr=False, default_factory=list
    )

    def to_record(self) -> dict:
        return {
            "corpus_id": self.corpus_id,
            "n": self.n,
            "smoothing": self.smoothing.method,
            "gold": self.gold,
            "split_seed": self.split_seed,
            "train_sentences": self.train_sentences,
            "test_sentences": self.test_sentences,
            "excluded_short": self.excluded_short,
            "accuracy": self.accuracy,
            "delta_test": self.delta_test,
        }


def split_stream(ts: TokenStream, spec: SplitSpec) -> tuple[TokenStream, TokenStream]:
    """Random sentence partition; train gets round(train_fraction * S) sentences.

    The partition is drawn with a PCG64 generator seeded by spec.seed and
    both halves keep their original sentence indices, in source order.
    """
    s = len(ts)
    if s < 5:
        raise CorpusError(f"need >= 5 sentences to split, got {s}")
    k = round(spec.train_fraction * s)
    k = min(max(k, 1), s - 1)
    perm = generator(spec.seed).permutation(s)
    train_pos = sorted(int(i) for i in perm[:k])
    test_pos = sorted(int(i) for i in perm[k:])

    def take(positions: list[int]) -> TokenStream:
        return dc_replace(
            ts,
            sentences=tuple(ts.sentences[i] for i in positions),
            word_lengths=None
            if ts.word_lengths is None
            else tuple(ts.word_lengths[i] for i in positions),
            indices=tuple(ts.indices[i] for i in positions),
        )

    return take(train_pos), take(test_pos)


def predict_directions(
    train: TokenStream,
    test: TokenStream,
    n: int,
    spec: SmoothingSpec,
    gold: Direction,
    split_seed: int = 0,
) -> PredictionOutcome:
    """Classify each held-out sentence's reading direction against *gold*."""
    if gold not in ("ltr", "rtl"):
        raise CorpusError(f"gold direction must be 'ltr' or 'rtl', got {gold!r}")
    if len(train) == 0 or len(test) == 0:
        raise CorpusError("train and test streams must be non-empty")
    model_ltr = count_ngrams(train, n)
    model_rtl = count_ngrams(reverse_stream(train), n)

    per_sentence: list[tuple[int, float, float, Direction]] = []
    hits = 0
    excluded = 0
    sum_ltr = 0.0
    sum_rtl = 0.0
    total_tokens = 0
    logs_ltr: list[float] = []
    logs_rtl: list[float] = []
    for idx, seq in zip(test.indices, test.sentences):
        lp_ltr, k = sentence_logprob(seq, model_ltr, spec)
        lp_rtl, _ = sentence_logprob(seq[::-1], model_rtl, spec)
        if k == 0:
            excluded += 1
            continue
        predicted: Direction = "ltr" if lp_ltr > lp_rtl else "rtl"
        per_sentence.append((idx, lp_ltr, lp_rtl, predicted))
        if predicted == gold:
            hits += 1
        logs_ltr.append(lp_ltr)
        logs_rtl.append(lp_rtl)
        total_tokens += k
    if total_tokens == 0:
        raise CorpusError(f"every test sentence is shorter than n={n}")
    sum_ltr = math.fsum(logs_ltr)
    sum_rtl = math.fsum(logs_rtl)
    delta_test = (-sum_ltr / total_tokens) - (-sum_rtl / total_tokens)
    if not math.isfinite(delta_test):
        raise NumericError("test-set delta is not finite")
    scored = len(per_sentence)
    return PredictionOutcome(
        corpus_id=test.corpus_id,
        n=n,
        smoothing=spec,
        gold=gold,
        split_seed=split_seed,
        train_sentences=len(train),
        test_sentences=scored,
        excluded_short=excluded,
        accuracy=hits / scored,
        delta_test=delta_test,
        per_sentence=per_sentence,
    )
