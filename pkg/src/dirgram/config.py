"""Run configuration: declarative JSON file plus flag overrides.

A config names the corpora (path, format, tokenization mode, gold
direction, id) and the analysis grid (n values, smoothing methods,
bootstrap/split/shuffle settings). Every report embeds the SHA-256
hash of the resolved configuration (output directory and formats
excluded) so equal-hash runs are comparable byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .corpus import Corpus, NormalizationProfile, read_eva, read_plaintext
from .errors import ConfigError

DEFAULT_N_VALUES = (2, 3, 4)
DEFAULT_SMOOTHING = ("laplace", "kneser_ney")


@dataclass(frozen=True)
class CorpusSpec:
    id: str
    path: str
    format: str = "plain"  # "plain" | "eva"
    mode: str = "baseline"  # "baseline" | "visual"
    gold: str = "ltr"  # "ltr" | "rtl"

    def __post_init__(self):
        if self.format not in ("plain", "eva"):
            raise ConfigError(f"corpus {self.id}: format must be 'plain' or 'eva'")
        if self.mode not in ("baseline", "visual"):
            raise ConfigError(f"corpus {self.id}: mode must be 'baseline' or 'visual'")
        if self.gold not in ("ltr", "rtl"):
            raise ConfigError(f"corpus {self.id}: gold must be 'ltr' or 'rtl'")

    def load(self, profile: NormalizationProfile) -> Corpus:
        if self.format == "eva":
            return read_eva(self.path, self.id)
        return read_plaintext(self.path, self.id, profile)


@dataclass(frozen=True)
class RunConfig:
    corpora: tuple[CorpusSpec, ...]
    n_values: tuple[int, ...] = DEFAULT_N_VALUES
    smoothing: tuple[str, ...] = DEFAULT_SMOOTHING
    bootstrap_replicates: int = 1000
    alpha: float = 0.05
    seed: int = 0
    train_fraction: float = 0.8
    shuffle_runs: int = 1
    kn_discount: float = 0.75
    kn_floor_factor: float = 10.0
    keep_chars: str = ""
    out: str = "out"
    formats: tuple[str, ...] = ("json", "csv", "md")

    def __post_init__(self):
        if not self.corpora:
            raise ConfigError("at least one corpus is required")
        ids = [c.id for c in self.corpora]
        if len(set(ids)) != len(ids):
            raise ConfigError("corpus ids must be unique")
        if any(n < 2 for n in self.n_values):
            raise ConfigError("n values must be >= 2")
        for method in self.smoothing:
            if method not in ("laplace", "kneser_ney"):
                raise ConfigError(f"unknown smoothing method: {method!r}")
        if self.bootstrap_replicates < 1:
            raise ConfigError("bootstrap replicates must be >= 1")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError("alpha must be in (0, 1)")
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError("train_fraction must be in (0, 1)")
        if self.shuffle_runs < 1:
            raise ConfigError("shuffle runs must be >= 1")
        if not 0.0 < self.kn_discount < 1.0:
            raise ConfigError("kn discount must be in (0, 1)")
        for fmt in self.formats:
            if fmt not in ("json", "csv", "md"):
                raise ConfigError(f"unknown output format: {fmt!r}")

    def normalization_profile(self) -> NormalizationProfile:
        return NormalizationProfile(keep=self.keep_chars)

    def check_paths(self) -> None:
        for spec in self.corpora:
            if not Path(spec.path).is_file():
                raise ConfigError(f"corpus {spec.id}: file not found: {spec.path}")

    def hash(self) -> str:
        payload = asdict(self)
        payload.pop("out")
        payload.pop("formats")
        text = json.dumps(payload, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def load_config(path: str | Path) -> RunConfig:
    """Parse a JSON config file into a RunConfig."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot parse config {p}: {exc}") from exc
    return config_from_dict(raw)


def config_from_dict(raw: dict) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    corpora_raw = raw.get("corpora")
    if not isinstance(corpora_raw, list) or not corpora_raw:
        raise ConfigError("config needs a non-empty 'corpora' list")
    corpora = []
    for i, entry in enumerate(corpora_raw):
        if not isinstance(entry, dict) or "path" not in entry:
            raise ConfigError(f"corpora[{i}] must be an object with a 'path'")
        corpora.append(
            CorpusSpec(
                id=str(entry.get("id", Path(entry["path"]).stem)),
                path=str(entry["path"]),
                format=str(entry.get("format", "plain")),
                mode=str(entry.get("mode", "baseline")),
                gold=str(entry.get("gold", "ltr")),
            )
        )
    try:
        return RunConfig(
            corpora=tuple(corpora),
            n_values=tuple(int(n) for n in raw.get("n", DEFAULT_N_VALUES)),
            smoothing=tuple(raw.get("smoothing", DEFAULT_SMOOTHING)),
            bootstrap_replicates=int(raw.get("bootstrap_replicates", 1000)),
            alpha=float(raw.get("alpha", 0.05)),
            seed=int(raw.get("seed", 0)),
            train_fraction=float(raw.get("train_fraction", 0.8)),
            shuffle_runs=int(raw.get("shuffle_runs", 1)),
            kn_discount=float(raw.get("kn_discount", 0.75)),
            kn_floor_factor=float(raw.get("kn_floor_factor", 10.0)),
            keep_chars=str(raw.get("keep_chars", "")),
            out=str(raw.get("out", "out")),
            formats=tuple(raw.get("formats", ("json", "csv", "md"))),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config value: {exc}") from exc


def apply_overrides(cfg: RunConfig, args) -> RunConfig:
    """Apply parsed CLI flags (argparse namespace) over a config."""
    updates = {}
    if getattr(args, "n", None):
        updates["n_values"] = tuple(int(x) for x in args.n.split(","))
    if getattr(args, "smoothing", None):
        updates["smoothing"] = tuple(args.smoothing.split(","))
    if getattr(args, "seed", None) is not None:
        updates["seed"] = args.seed
    if getattr(args, "bootstrap_B", None) is not None:
        updates["bootstrap_replicates"] = args.bootstrap_B
    if getattr(args, "alpha", None) is not None:
        updates["alpha"] = args.alpha
    if getattr(args, "train_fraction", None) is not None:
        updates["train_fraction"] = args.train_fraction
    if getattr(args, "shuffle_runs", None) is not None:
        updates["shuffle_runs"] = args.shuffle_runs
    if getattr(args, "kn_floor_factor", None) is not None:
        updates["kn_floor_factor"] = args.kn_floor_factor
    if getattr(args, "keep_chars", None) is not None:
        updates["keep_chars"] = args.keep_chars
    if getattr(args, "out", None):
        updates["out"] = args.out
    if getattr(args, "format", None):
        updates["formats"] = tuple(args.format.split(","))
    try:
        return replace(cfg, **updates) if updates else cfg
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid override: {exc}") from exc


def worker_count() -> int:
    """Worker cap from DIRGRAM_THREADS (default 1: sequential)."""
    raw = os.environ.get("DIRGRAM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"DIRGRAM_THREADS must be an integer, got {raw!r}") from exc
    return max(1, n)
