"""dirgram: reading-direction asymmetry analysis for tokenized corpora.

Quantifies whether a grapheme stream is easier to model left-to-right
or right-to-left: n-gram cross-entropy differences with bootstrap
confidence intervals, within-sentence shuffle controls, a train/test
direction classifier, and word-boundary entropy/Gini diagnostics.
"""

__version__ = "0.1.0"

from .corpus import Corpus, NormalizationProfile, Sentence, read_eva, read_plaintext
from .direction import (
    BootstrapConfig,
    DirectionalResult,
    directional_delta,
    directional_delta_with_ci,
    paired_bootstrap_ci,
    percentile,
    shuffle_control,
)
from .errors import (
    ConfigError,
    CorpusError,
    DirgramError,
    EmptyCorpusError,
    NumericError,
)
from .ngram import (
    CrossEntropyResult,
    NGramCounts,
    SmoothingSpec,
    count_ngrams,
    cross_entropy,
    prob_kneser_ney,
    prob_laplace,
)
from .predictive import PredictionOutcome, SplitSpec, predict_directions, split_stream
from .streams import TokenStream, reverse_stream, tokenize
from .synth import SynthSpec, generate, write_corpus

__all__ = [
    "BootstrapConfig",
    "ConfigError",
    "Corpus",
    "CorpusError",
    "CrossEntropyResult",
    "DirectionalResult",
    "DirgramError",
    "EmptyCorpusError",
    "NGramCounts",
    "NormalizationProfile",
    "NumericError",
    "PredictionOutcome",
    "Sentence",
    "SmoothingSpec",
    "SplitSpec",
    "SynthSpec",
    "TokenStream",
    "count_ngrams",
    "cross_entropy",
    "directional_delta",
    "directional_delta_with_ci",
    "generate",
    "paired_bootstrap_ci",
    "percentile",
    "predict_directions",
    "prob_kneser_ney",
    "prob_laplace",
    "read_eva",
    "read_plaintext",
    "reverse_stream",
    "shuffle_control",
    "split_stream",
    "tokenize",
    "write_corpus",
]
