"""Independent brute-force reference implementations.

Everything here recounts from scratch with explicit nested loops and
evaluates formulas directly, sharing no code with the package. Slow on
purpose; used to freeze expected values and to cross-check the fast
paths on small random corpora.
"""

from __future__ import annotations

import math


def enumerate_positions(sentences, n):
    """All (context, token) prediction events, sentence by sentence."""
    events = []
    for seq in sentences:
        for i in range(len(seq)):
            if i >= n - 1:
                context = tuple(seq[i - n + 1 : i])
                events.append((context, seq[i]))
    return events


def vocab(sentences):
    out = set()
    for seq in sentences:
        for g in seq:
            out.add(g)
    return out


def count(sentences, n, context, token):
    total = 0
    for c, w in enumerate_positions(sentences, n):
        if c == context and w == token:
            total += 1
    return total


def context_count(sentences, n, context):
    total = 0
    for c, _ in enumerate_positions(sentences, n):
        if c == context:
            total += 1
    return total


def distinct_types(sentences, n):
    return len(set(enumerate_positions(sentences, n)))


def continuation_count(sentences, n, token):
    contexts = set()
    for c, w in enumerate_positions(sentences, n):
        if w == token:
            contexts.add(c)
    return len(contexts)


def laplace_prob(sentences, n, context, token):
    v = len(vocab(sentences))
    return (count(sentences, n, context, token) + 1) / (
        context_count(sentences, n, context) + v
    )


def kneser_ney_prob(sentences, n, context, token, discount=0.75, floor_factor=10.0):
    types = distinct_types(sentences, n)
    p_cont = continuation_count(sentences, n, token) / types
    ctx_total = context_count(sentences, n, context)
    if ctx_total == 0:
        prob = p_cont
    else:
        seen = count(sentences, n, context, token)
        distinct_succ = len(
            {w for c, w in set(enumerate_positions(sentences, n)) if c == context}
        )
        lam = discount * distinct_succ / ctx_total
        prob = max(seen - discount, 0.0) / ctx_total + lam * p_cont
    if prob == 0.0 and floor_factor > 0:
        prob = 1.0 / (floor_factor * types)
    return prob


def cross_entropy(train_sentences, eval_sentences, n, method, discount=0.75):
    """Self- or cross-scored cross-entropy, recomputing every probability."""
    logs = []
    for seq in eval_sentences:
        for i in range(len(seq)):
            if i >= n - 1:
                context = tuple(seq[i - n + 1 : i])
                if method == "laplace":
                    p = laplace_prob(train_sentences, n, context, seq[i])
                else:
                    p = kneser_ney_prob(train_sentences, n, context, seq[i], discount)
                logs.append(math.log(p))
    x = -sum(logs) / len(logs)
    return x, len(logs), math.exp(x)


def directional_delta(sentences, n, method, discount=0.75):
    reversed_sentences = [tuple(reversed(s)) for s in sentences]
    x_ltr, _, _ = cross_entropy(sentences, sentences, n, method, discount)
    x_rtl, _, _ = cross_entropy(reversed_sentences, reversed_sentences, n, method, discount)
    return x_ltr - x_rtl


def shannon_entropy(counts):
    total = sum(counts)
    return -sum((c / total) * math.log(c / total) for c in counts if c > 0)


def gini_index(counts):
    xs = [c for c in counts if c > 0]
    k = len(xs)
    total = sum(xs)
    pair_sum = 0.0
    for a in xs:
        for b in xs:
            pair_sum += abs(a - b)
    return pair_sum / (2 * k * total)
