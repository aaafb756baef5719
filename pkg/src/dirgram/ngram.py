"""Grapheme n-gram count tables, smoothing, cross-entropy and perplexity.

Counting is per sentence: prediction positions are i = n-1 .. L-1
(0-based) inside each sentence, with no padding and no cross-sentence
n-grams. A sentence shorter than n contributes nothing to the counts
but its graphemes still enter the vocabulary.

Two conditional-probability estimators are provided:

- Laplace (add-one):  p(w | c) = (count(c, w) + 1) / (count(c) + V)
- Kneser-Ney (single-level, absolute discount delta, default 0.75):

      p(w | c) = max(count(c, w) - delta, 0) / count(c)
                 + lambda(c) * p_cont(w)
      lambda(c) = delta * |{w : count(c, w) > 0}| / count(c)
      p_cont(w) = |{c : count(c, w) > 0}| / (distinct (c, w) types)

  For an unseen context (count(c) = 0) the estimate backs off to
  p_cont(w) directly. If the result is exactly zero (w was never seen
  as a continuation) a floor of 1 / (floor_factor * distinct types)
  keeps log-probabilities finite; floor_factor = 0 disables the floor.

Cross-entropy X is the mean negative natural-log probability per
prediction token; perplexity is exp(X). Per-sentence log-probability
totals are retained for bootstrap resampling and direction
classification. Log-probability sums use error-free compensated
accumulation (math.fsum) so that asymmetries of order 1e-4 survive
summation over millions of tokens.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from .errors import CorpusError, NumericError
from .streams import TokenStream

Context = tuple[str, ...]

MODEL_DUMP_VERSION = 1
# Reserved separator used only in the JSON dump format.
_DUMP_SEP = ""


@dataclass(frozen=True)
class SmoothingSpec:
    method: Literal["laplace", "kneser_ney"] = "laplace"
    discount: float = 0.75
    floor_factor: float = 10.0

    def __post_init__(self):
        if self.method not in ("laplace", "kneser_ney"):
            raise CorpusError(f"unknown smoothing method: {self.method!r}")
        if self.method == "kneser_ney" and not 0.0 < self.discount < 1.0:
            raise CorpusError("discount must be in (0, 1)")
        if self.floor_factor < 0:
            raise CorpusError("floor_factor must be >= 0")

    def label(self) -> str:
        return self.method


@dataclass
class NGramCounts:
    """Order-n count tables built from one token stream."""

    n: int
    successors: dict[Context, dict[str, int]]  # context -> token -> count
    context_totals: dict[Context, int]  # context -> sum of successor counts
    vocabulary: frozenset[str]
    continuation: dict[str, int]  # token -> distinct contexts it follows
    distinct_types: int  # distinct (context, token) pairs
    prediction_tokens: int  # total prediction positions in the source stream

    @property
    def vocab_size(self) -> int:
        return len(self.vocabulary)


def count_ngrams(ts: TokenStream, n: int) -> NGramCounts:
    """Accumulate order-n counts over every sentence of *ts*."""
    if n < 2:
        raise CorpusError(f"n must be >= 2, got {n}")
    if len(ts) == 0:
        raise CorpusError("token stream is empty")

    successors: dict[Context, dict[str, int]] = {}
    vocab: set[str] = set()
    predictions = 0
    for seq in ts.sentences:
        vocab.update(seq)
        length = len(seq)
        if length < n:
            continue
        predictions += length - n + 1
        for i in range(n - 1, length):
            ctx = seq[i - n + 1 : i]
            tok = seq[i]
            row = successors.get(ctx)
            if row is None:
                row = {}
                successors[ctx] = row
            row[tok] = row.get(tok, 0) + 1

    context_totals = {ctx: sum(row.values()) for ctx, row in successors.items()}
    continuation: dict[str, int] = {}
    distinct_types = 0
    for row in successors.values():
        distinct_types += len(row)
        for tok in row:
            continuation[tok] = continuation.get(tok, 0) + 1

    return NGramCounts(
        n=n,
        successors=successors,
        context_totals=context_totals,
        vocabulary=frozenset(vocab),
        continuation=continuation,
        distinct_types=distinct_types,
        prediction_tokens=predictions,
    )


def prob_laplace(counts: NGramCounts, context: Context, token: str) -> float:
    """Add-one estimate; total over contexts and tokens of any origin."""
    row = counts.successors.get(context)
    seen = 0 if row is None else row.get(token, 0)
    total = counts.context_totals.get(context, 0)
    return (seen + 1) / (total + counts.vocab_size)


def prob_kneser_ney(
    counts: NGramCounts, spec: SmoothingSpec, context: Context, token: str
) -> float:
    """Single-level interpolated Kneser-Ney estimate (see module docstring)."""
    if counts.distinct_types == 0:
        raise NumericError("no n-grams observed; Kneser-Ney is undefined")
    p_cont = counts.continuation.get(token, 0) / counts.distinct_types
    row = counts.successors.get(context)
    if row is None:
        prob = p_cont
    else:
        total = counts.context_totals[context]
        delta = spec.discount
        seen = row.get(token, 0)
        prob = max(seen - delta, 0.0) / total + (delta * len(row) / total) * p_cont
    if prob == 0.0 and spec.floor_factor > 0:
        prob = 1.0 / (spec.floor_factor * counts.distinct_types)
    return prob


def sentence_logprob(
    seq: tuple[str, ...], counts: NGramCounts, spec: SmoothingSpec
) -> tuple[float, int]:
    """Total natural-log probability of one sentence and its prediction-token count."""
    n = counts.n
    length = len(seq)
    if length < n:
        return 0.0, 0
    log = math.log
    terms = []
    if spec.method == "laplace":
        successors = counts.successors
        totals = counts.context_totals
        vsize = counts.vocab_size
        for i in range(n - 1, length):
            ctx = seq[i - n + 1 : i]
            row = successors.get(ctx)
            seen = 0 if row is None else row.get(seq[i], 0)
            terms.append(log((seen + 1) / (totals.get(ctx, 0) + vsize)))
    else:
        for i in range(n - 1, length):
            terms.append(log(prob_kneser_ney(counts, spec, seq[i - n + 1 : i], seq[i])))
    return math.fsum(terms), length - n + 1


@dataclass
class CrossEntropyResult:
    x: float  # nats per prediction token
    n_tokens: int
    perplexity: float
    # (sentence index in the source corpus, total log-prob, prediction tokens)
    per_sentence: list[tuple[int, float, int]] = field(repr=False, default_factory=list)


def cross_entropy(
    ts: TokenStream, counts: NGramCounts, spec: SmoothingSpec
) -> CrossEntropyResult:
    """Score every prediction position of *ts* under *counts*."""
    per_sentence: list[tuple[int, float, int]] = []
    total_tokens = 0
    for idx, seq in zip(ts.indices, ts.sentences):
        lp, k = sentence_logprob(seq, counts, spec)
        per_sentence.append((idx, lp, k))
        total_tokens += k
    if total_tokens == 0:
        raise CorpusError(
            f"no prediction tokens: every sentence is shorter than n={counts.n}"
        )
    x = -math.fsum(lp for _, lp, _ in per_sentence) / total_tokens
    if not math.isfinite(x):
        raise NumericError("cross-entropy is not finite")
    return CrossEntropyResult(
        x=x, n_tokens=total_tokens, perplexity=math.exp(x), per_sentence=per_sentence
    )


def save_counts(counts: NGramCounts, path: str | Path) -> None:
    """Write a sorted, versioned JSON dump of the count table (debugging/golden tests)."""
    rows = []
    for ctx in sorted(counts.successors):
        row = counts.successors[ctx]
        for tok in sorted(row):
            rows.append([_DUMP_SEP.join(ctx), tok, row[tok]])
    payload = {
        "version": MODEL_DUMP_VERSION,
        "n": counts.n,
        "vocabulary": sorted(counts.vocabulary),
        "counts": rows,
    }
    Path(path).write_text(
        json.dumps(payload, ensure_ascii=False, sort_keys=True), encoding="utf-8"
    )


def load_counts(path: str | Path) -> NGramCounts:
    """Rebuild an NGramCounts from a dump written by save_counts.

    prediction_tokens is not stored in the dump and is restored as the
    sum of all counts (identical for streams with no short sentences).
    """
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("version") != MODEL_DUMP_VERSION:
        raise CorpusError(f"unsupported model dump version: {payload.get('version')}")
    n = payload["n"]
    successors: dict[Context, dict[str, int]] = {}
    for ctx_text, tok, cnt in payload["counts"]:
        ctx = tuple(ctx_text.split(_DUMP_SEP)) if ctx_text else ()
        successors.setdefault(ctx, {})[tok] = cnt
    context_totals = {ctx: sum(row.values()) for ctx, row in successors.items()}
    continuation: dict[str, int] = {}
    distinct_types = 0
    for row in successors.values():
        distinct_types += len(row)
        for tok in row:
            continuation[tok] = continuation.get(tok, 0) + 1
    total = sum(context_totals.values())
    return NGramCounts(
        n=n,
        successors=successors,
        context_totals=context_totals,
        vocabulary=frozenset(payload["vocabulary"]),
        continuation=continuation,
        distinct_types=distinct_types,
        prediction_tokens=total,
    )
