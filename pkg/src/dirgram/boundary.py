"""Word-boundary diagnostics: initial/final grapheme distributions,
Shannon entropy, Gini index, and rank-frequency curves.

Entropy is reported in nats by default (a bits conversion is provided
for comparison with entropy-in-bits reports). The Gini index is the
population mean-absolute-difference form over the observed (nonzero)
support:

    G = sum_ij |x_i - x_j| / (2 * k * sum(x))

with k the number of observed frequencies. A one-grapheme word counts
in both the initial and the final tally, since both boundary positions
exist and coincide.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import NumericError

Position = Literal["initial", "final", "all"]


def entropy(freqs: dict[str, int] | Counter, base: str = "nats") -> float:
    """Shannon entropy of a frequency table; 0 * ln 0 is taken as 0."""
    total = sum(freqs.values())
    if total <= 0:
        raise NumericError("entropy of an empty frequency table")
    h = -math.fsum(
        (c / total) * math.log(c / total) for c in freqs.values() if c > 0
    )
    if base == "bits":
        return h / math.log(2)
    return h


def gini(freqs: dict[str, int] | Counter) -> float:
    """Population Gini index over the observed frequencies (no small-sample correction)."""
    xs = sorted(c for c in freqs.values() if c > 0)
    k = len(xs)
    if k == 0:
        raise NumericError("gini of an empty frequency table")
    total = sum(xs)
    # sum_ij |x_i - x_j| = 2 * sum_i (2i - k + 1) * x_(i), for ascending x
    weighted = sum((2 * i - k + 1) * x for i, x in enumerate(xs))
    return weighted / (k * total)


@dataclass
class BoundaryStats:
    corpus_id: str
    initial_freq: Counter
    final_freq: Counter
    all_freq: Counter
    word_count: int
    h_initial: float
    h_final: float
    g_initial: float
    g_final: float
    delta_h: float  # h_initial - h_final
    delta_g: float  # g_initial - g_final
    distinct_initial: int
    distinct_final: int

    def to_record(self) -> dict:
        return {
            "corpus_id": self.corpus_id,
            "words": self.word_count,
            "initial": {
                "distinct": self.distinct_initial,
                "entropy_nats": self.h_initial,
                "gini": self.g_initial,
            },
            "final": {
                "distinct": self.distinct_final,
                "entropy_nats": self.h_final,
                "gini": self.g_final,
            },
            "delta_entropy": self.delta_h,
            "delta_gini": self.delta_g,
        }


def boundary_distributions(
    words: Iterable[Sequence[str]], corpus_id: str = ""
) -> BoundaryStats:
    """Tally word-initial and word-final graphemes over *words*."""
    initial: Counter = Counter()
    final: Counter = Counter()
    everything: Counter = Counter()
    count = 0
    for word in words:
        initial[word[0]] += 1
        final[word[-1]] += 1
        everything.update(word)
        count += 1
    if count == 0:
        raise NumericError("no words to tally")
    h_i, h_f = entropy(initial), entropy(final)
    g_i, g_f = gini(initial), gini(final)
    return BoundaryStats(
        corpus_id=corpus_id,
        initial_freq=initial,
        final_freq=final,
        all_freq=everything,
        word_count=count,
        h_initial=h_i,
        h_final=h_f,
        g_initial=g_i,
        g_final=g_f,
        delta_h=h_i - h_f,
        delta_g=g_i - g_f,
        distinct_initial=len(initial),
        distinct_final=len(final),
    )


def boundary_units(
    words: Iterable[Sequence[str]], max_len: int = 2
) -> dict[int, dict[str, int]]:
    """Distinct word-initial/final unit counts for unit lengths 1..max_len.

    A boundary unit of length L is the first (resp. last) L graphemes of
    a word, counted only for words of length >= L. This reports how the
    distinct-inventory comparison changes when boundary units longer
    than one grapheme are admitted.
    """
    initial: dict[int, set] = {ln: set() for ln in range(1, max_len + 1)}
    final: dict[int, set] = {ln: set() for ln in range(1, max_len + 1)}
    for word in words:
        for ln in range(1, max_len + 1):
            if len(word) >= ln:
                initial[ln].add(tuple(word[:ln]))
                final[ln].add(tuple(word[-ln:]))
    return {
        ln: {"initial": len(initial[ln]), "final": len(final[ln])}
        for ln in range(1, max_len + 1)
    }


def normalized_boundary_score(stats: BoundaryStats) -> dict:
    """Entropy/Gini differences after restricting both distributions to
    their top-k support, k = min(distinct initial, distinct final).

    Balances the supports before comparing, so corpora whose initial and
    final inventories differ in size remain comparable. Ties in the
    top-k cut are broken by grapheme code point.
    """
    k = min(stats.distinct_initial, stats.distinct_final)

    def top_k(freqs: Counter) -> dict[str, int]:
        ordered = sorted(freqs.items(), key=lambda kv: (-kv[1], kv[0]))
        return dict(ordered[:k])

    top_i = top_k(stats.initial_freq)
    top_f = top_k(stats.final_freq)
    return {
        "k": k,
        "delta_entropy": entropy(top_i) - entropy(top_f),
        "delta_gini": gini(top_i) - gini(top_f),
    }


@dataclass
class FrequencyCurve:
    position: Position
    # (rank starting at 1, count, ln rank, ln count); counts non-increasing
    points: list[tuple[int, int, float, float]]


def frequency_curve(
    freqs: dict[str, int] | Counter, position: Position = "all"
) -> FrequencyCurve:
    """Rank-frequency curve in log-log coordinates.

    Frequencies sort descending; ties are ordered by grapheme code point
    so the curve is deterministic.
    """
    items = sorted(
        ((g, c) for g, c in freqs.items() if c > 0), key=lambda kv: (-kv[1], kv[0])
    )
    if not items:
        raise NumericError("frequency curve of an empty table")
    points = [
        (rank, count, math.log(rank), math.log(count))
        for rank, (_, count) in enumerate(items, start=1)
    ]
    return FrequencyCurve(position=position, points=points)


def plateau_zipf_score(curve: FrequencyCurve) -> tuple[float, float]:
    """(slope, curvature) of the log-log curve.

    Slope is the least-squares straight-line slope of ln count against
    ln rank; curvature is the quadratic coefficient of a degree-2 fit.
    A flat (plateau) curve scores slope ~0; an exact power law
    count ~ rank^-1 scores slope -1 with curvature 0.
    """
    if len(curve.points) < 3:
        raise NumericError("need >= 3 points to fit a curve")
    lx = np.array([p[2] for p in curve.points])
    ly = np.array([p[3] for p in curve.points])
    slope = float(np.polyfit(lx, ly, 1)[0])
    curvature = float(np.polyfit(lx, ly, 2)[0])
    return slope, curvature


def fitted_slope_top_mass(curve: FrequencyCurve, mass: float = 0.8) -> float:
    """Straight-line slope over the smallest rank prefix covering *mass* of counts.

    Restricting the fit to the high-mass head makes plateau-vs-power-law
    comparisons insensitive to rare-item tails.
    """
    total = sum(p[1] for p in curve.points)
    acc = 0
    head = []
    for p in curve.points:
        head.append(p)
        acc += p[1]
        if acc >= mass * total:
            break
    if len(head) < 2:
        # Degenerate head (one rank dominates): treat as flat.
        return 0.0
    lx = np.array([p[2] for p in head])
    ly = np.array([p[3] for p in head])
    return float(np.polyfit(lx, ly, 1)[0])
