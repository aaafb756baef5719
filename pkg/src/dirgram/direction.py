"""Directional asymmetry: delta = X_LTR - X_RTL, bootstrap CIs, shuffle controls.

The headline statistic self-scores: the LTR model is built on the
stream and evaluated on it, the RTL model is built on the reversed
stream and evaluated on that. delta > 0 means the RTL model assigns the
corpus lower cross-entropy.

The bootstrap is paired over sentences: one index resample is applied
to both directions' per-sentence log-probability totals, and each
replicate's delta is recomputed as a ratio of sums (cross-entropy of
the resampled pseudo-corpus), weighting sentences by token count.
Models are not retrained per replicate. Replicate index draws come from
per-replicate seeds derived from the bootstrap seed, so replicates are
order-independent and could be evaluated in parallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace as dc_replace
from typing import Sequence

import numpy as np

from .errors import CorpusError, NumericError
from .ngram import NGramCounts, SmoothingSpec, count_ngrams, cross_entropy
from .seeds import derive_seed, generator
from .streams import TokenStream, reverse_stream

# One sentence's paired contribution: (log-prob LTR, log-prob RTL,
# prediction tokens). Reversal preserves sentence length, so the token
# count is shared by both directions.
PairedLogProb = tuple[float, float, int]


@dataclass(frozen=True)
class BootstrapConfig:
    replicates: int = 1000
    alpha: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.replicates < 1:
            raise CorpusError("replicates must be >= 1")
        if not 0.0 < self.alpha < 1.0:
            raise CorpusError("alpha must be in (0, 1)")


@dataclass
class DirectionalResult:
    corpus_id: str
    n: int
    smoothing: SmoothingSpec
    x_ltr: float
    x_rtl: float
    delta: float
    perplexity_ltr: float
    perplexity_rtl: float
    n_tokens: int
    sentence_count: int
    ci_low: float | None = None
    ci_high: float | None = None
    replicates: int | None = None
    alpha: float | None = None
    seed: int | None = None
    pairs: list[PairedLogProb] = field(repr=False, default_factory=list)

    def to_record(self) -> dict:
        return {
            "corpus_id": self.corpus_id,
            "n": self.n,
            "smoothing": {
                "method": self.smoothing.method,
                "discount": self.smoothing.discount,
                "floor_factor": self.smoothing.floor_factor,
            },
            "delta": self.delta,
            "x_ltr": self.x_ltr,
            "x_rtl": self.x_rtl,
            "ppl_ltr": self.perplexity_ltr,
            "ppl_rtl": self.perplexity_rtl,
            "ci": None if self.ci_low is None else [self.ci_low, self.ci_high],
            "B": self.replicates,
            "alpha": self.alpha,
            "seed": self.seed,
            "N_tokens": self.n_tokens,
            "sentences": self.sentence_count,
        }


def directional_delta(
    ts: TokenStream, n: int, spec: SmoothingSpec
) -> DirectionalResult:
    """Self-scored cross-entropies in both reading directions (no CI)."""
    rev = reverse_stream(ts)
    counts_ltr = count_ngrams(ts, n)
    counts_rtl = count_ngrams(rev, n)
    res_ltr = cross_entropy(ts, counts_ltr, spec)
    res_rtl = cross_entropy(rev, counts_rtl, spec)
    if res_ltr.n_tokens != res_rtl.n_tokens:
        raise NumericError("token counts differ between directions")
    pairs = [
        (lp_l, lp_r, k_l)
        for (_, lp_l, k_l), (_, lp_r, _) in zip(
            res_ltr.per_sentence, res_rtl.per_sentence
        )
    ]
    return DirectionalResult(
        corpus_id=ts.corpus_id,
        n=n,
        smoothing=spec,
        x_ltr=res_ltr.x,
        x_rtl=res_rtl.x,
        delta=res_ltr.x - res_rtl.x,
        perplexity_ltr=res_ltr.perplexity,
        perplexity_rtl=res_rtl.perplexity,
        n_tokens=res_ltr.n_tokens,
        sentence_count=len(ts),
        pairs=pairs,
    )


def percentile(sorted_samples: Sequence[float], q: float) -> float:
    """Empirical percentile with linear interpolation between closest ranks.

    Expects samples sorted ascending; q in [0, 1]; q=0 is the minimum
    and q=1 the maximum.
    """
    m = len(sorted_samples)
    if m == 0:
        raise NumericError("percentile of empty sample set")
    if not 0.0 <= q <= 1.0:
        raise NumericError(f"percentile rank out of range: {q}")
    h = q * (m - 1)
    lo = math.floor(h)
    hi = min(lo + 1, m - 1)
    frac = h - lo
    return sorted_samples[lo] + frac * (sorted_samples[hi] - sorted_samples[lo])


def bootstrap_deltas(
    pairs: Sequence[PairedLogProb], cfg: BootstrapConfig
) -> np.ndarray:
    """The replicate delta* distribution underlying the CI (sorted ascending)."""
    scoreable = sum(1 for _, _, k in pairs if k > 0)
    if scoreable < 2:
        raise CorpusError("bootstrap needs >= 2 sentences with prediction tokens")
    lp_ltr = np.array([p[0] for p in pairs], dtype=np.float64)
    lp_rtl = np.array([p[1] for p in pairs], dtype=np.float64)
    ntok = np.array([p[2] for p in pairs], dtype=np.float64)
    s = len(pairs)
    deltas = np.empty(cfg.replicates, dtype=np.float64)
    for b in range(cfg.replicates):
        rng = generator(derive_seed(cfg.seed, "replicate", b))
        # All sentences take part in the resample; a replicate whose draw
        # contains no prediction tokens carries no information and is
        # redrawn deterministically.
        for attempt in range(1000):
            idx = rng.integers(0, s, size=s)
            total = ntok[idx].sum()
            if total > 0:
                break
        else:
            raise NumericError("bootstrap replicate with prediction tokens not found")
        deltas[b] = (-lp_ltr[idx].sum() / total) - (-lp_rtl[idx].sum() / total)
    deltas.sort()
    return deltas


def paired_bootstrap_ci(
    pairs: Sequence[PairedLogProb], cfg: BootstrapConfig
) -> tuple[float, float]:
    """Percentile confidence interval for delta from paired sentence resampling."""
    deltas = bootstrap_deltas(pairs, cfg)
    samples = deltas.tolist()
    return (
        percentile(samples, cfg.alpha / 2),
        percentile(samples, 1 - cfg.alpha / 2),
    )


def directional_delta_with_ci(
    ts: TokenStream, n: int, spec: SmoothingSpec, cfg: BootstrapConfig
) -> DirectionalResult:
    result = directional_delta(ts, n, spec)
    low, high = paired_bootstrap_ci(result.pairs, cfg)
    result.ci_low = low
    result.ci_high = high
    result.replicates = cfg.replicates
    result.alpha = cfg.alpha
    result.seed = cfg.seed
    return result


def shuffle_control(ts: TokenStream, seed: int) -> TokenStream:
    """Permute each sentence's graphemes independently and uniformly at random.

    Sentence boundaries are preserved; word-boundary metadata no longer
    describes the shuffled sequences and is dropped. Permutations come
    from a PCG64 generator seeded with *seed* (Fisher-Yates).
    """
    rng = generator(seed)
    shuffled = []
    for seq in ts.sentences:
        perm = rng.permutation(len(seq))
        shuffled.append(tuple(seq[j] for j in perm))
    return dc_replace(ts, sentences=tuple(shuffled), word_lengths=None)
