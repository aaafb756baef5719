"""Command-line front end.

Subcommands: analyze, shuffle-control, predict, boundary, synth,
report. Configuration comes from a JSON file (--config) and/or a
single-corpus shorthand (--corpus ...); flags override file values.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numeric
failure.

Analysis cells (corpus, n, smoothing) are independent; DIRGRAM_THREADS
caps the process-pool width. All randomness is derived from per-cell
seeds, so results never depend on worker count or execution order.
"""

from __future__ import annotations

import argparse
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__, reports
from .boundary import (
    boundary_distributions,
    boundary_units,
    fitted_slope_top_mass,
    frequency_curve,
    normalized_boundary_score,
    plateau_zipf_score,
)
from .config import (
    CorpusSpec,
    RunConfig,
    apply_overrides,
    config_from_dict,
    load_config,
    worker_count,
)
from .direction import (
    BootstrapConfig,
    directional_delta_with_ci,
    shuffle_control,
)
from .errors import ConfigError, CorpusError, DirgramError, NumericError
from .ngram import SmoothingSpec
from .predictive import SplitSpec, predict_directions, split_stream
from .seeds import derive_seed
from .streams import TokenStream, tokenize
from .synth import SynthSpec, generate, write_corpus


def _smoothing_spec(cfg: RunConfig, method: str) -> SmoothingSpec:
    return SmoothingSpec(
        method=method, discount=cfg.kn_discount, floor_factor=cfg.kn_floor_factor
    )


def _load_streams(cfg: RunConfig) -> dict[str, tuple[CorpusSpec, TokenStream]]:
    profile = cfg.normalization_profile()
    streams = {}
    for spec in cfg.corpora:
        corpus = spec.load(profile)
        streams[spec.id] = (spec, tokenize(corpus, spec.mode))
    return streams


def _map_cells(func, cells: list) -> list:
    workers = worker_count()
    if workers == 1 or len(cells) <= 1:
        return [func(cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, cells))


def _cell_context(corpus_id: str, n: int, method: str):
    return f"(corpus={corpus_id}, n={n}, smoothing={method})"


# ---------------------------------------------------------------- analyze

def _analyze_cell(cell) -> dict:
    ts, n, spec, bootstrap = cell
    try:
        result = directional_delta_with_ci(ts, n, spec, bootstrap)
    except DirgramError as exc:
        raise type(exc)(
            f"analyze {_cell_context(ts.corpus_id, n, spec.method)}: {exc}"
        ) from exc
    return result.to_record()


def cmd_analyze(cfg: RunConfig) -> list[Path]:
    streams = _load_streams(cfg)
    cells = []
    for corpus_id, (_, ts) in streams.items():
        for n in cfg.n_values:
            for method in cfg.smoothing:
                seed = derive_seed(cfg.seed, "bootstrap", corpus_id, n, method)
                cells.append(
                    (
                        ts,
                        n,
                        _smoothing_spec(cfg, method),
                        BootstrapConfig(
                            replicates=cfg.bootstrap_replicates,
                            alpha=cfg.alpha,
                            seed=seed,
                        ),
                    )
                )
    records = _map_cells(_analyze_cell, cells)
    return _emit(cfg, "analyze", records)


# ---------------------------------------------------------- shuffle-control

def _shuffle_cell(cell) -> dict:
    ts, n, spec, bootstrap, condition, shuffle_seed = cell
    try:
        stream = ts if shuffle_seed is None else shuffle_control(ts, shuffle_seed)
        result = directional_delta_with_ci(stream, n, spec, bootstrap)
    except DirgramError as exc:
        raise type(exc)(
            f"shuffle-control {_cell_context(ts.corpus_id, n, spec.method)}: {exc}"
        ) from exc
    record = result.to_record()
    record["condition"] = condition
    record["shuffle_seed"] = shuffle_seed
    return record


def cmd_shuffle_control(cfg: RunConfig) -> list[Path]:
    streams = _load_streams(cfg)
    cells = []
    for corpus_id, (_, ts) in streams.items():
        for n in cfg.n_values:
            for method in cfg.smoothing:
                spec = _smoothing_spec(cfg, method)
                base = derive_seed(cfg.seed, "bootstrap", corpus_id, n, method)
                cells.append(
                    (ts, n, spec, BootstrapConfig(cfg.bootstrap_replicates, cfg.alpha, base), "original", None)
                )
                for run in range(cfg.shuffle_runs):
                    shuffle_seed = derive_seed(cfg.seed, "shuffle", corpus_id, run)
                    boot_seed = derive_seed(base, "shuffled", run)
                    cells.append(
                        (
                            ts,
                            n,
                            spec,
                            BootstrapConfig(cfg.bootstrap_replicates, cfg.alpha, boot_seed),
                            f"shuffled[{run}]",
                            shuffle_seed,
                        )
                    )
    records = _map_cells(_shuffle_cell, cells)

    summaries = []
    originals = {
        (r["corpus_id"], r["n"], r["smoothing"]["method"]): r
        for r in records
        if r["condition"] == "original"
    }
    for key, orig in originals.items():
        corpus_id, n, method = key
        shuffled = [
            r
            for r in records
            if r["condition"].startswith("shuffled")
            and (r["corpus_id"], r["n"], r["smoothing"]["method"]) == key
        ]
        mean_abs = sum(abs(r["delta"]) for r in shuffled) / len(shuffled)
        covers = sum(1 for r in shuffled if r["ci"][0] <= 0.0 <= r["ci"][1])
        summaries.append(
            {
                "corpus_id": corpus_id,
                "n": n,
                "smoothing": method,
                "delta_original": orig["delta"],
                "mean_abs_delta_shuffled": mean_abs,
                "ratio": abs(orig["delta"]) / mean_abs if mean_abs > 0 else None,
                "ci_covers_zero": covers,
                "shuffle_runs": len(shuffled),
            }
        )
    return _emit(cfg, "shuffle_control", records, extra={"summaries": summaries})


# ----------------------------------------------------------------- predict

def _predict_cell(cell) -> dict:
    ts, n, spec, gold, split_seed = cell
    try:
        train, test = split_stream(ts, SplitSpec(seed=split_seed))
        outcome = predict_directions(train, test, n, spec, gold, split_seed=split_seed)
    except DirgramError as exc:
        raise type(exc)(
            f"predict {_cell_context(ts.corpus_id, n, spec.method)}: {exc}"
        ) from exc
    return outcome.to_record()


def cmd_predict(cfg: RunConfig) -> list[Path]:
    streams = _load_streams(cfg)
    cells = []
    # Prediction defaults to the first configured smoother.
    method = cfg.smoothing[0]
    for corpus_id, (spec, ts) in streams.items():
        split_seed = derive_seed(cfg.seed, "split", corpus_id)
        for n in cfg.n_values:
            cells.append((ts, n, _smoothing_spec(cfg, method), spec.gold, split_seed))
    records = _map_cells(_predict_cell, cells)
    return _emit(cfg, "predict", records)


# ---------------------------------------------------------------- boundary

def _safe_name(corpus_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9_-]+", "_", corpus_id)


def cmd_boundary(cfg: RunConfig) -> list[Path]:
    profile = cfg.normalization_profile()
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = []
    written: list[Path] = []
    for spec in cfg.corpora:
        corpus = spec.load(profile)
        stats = boundary_distributions(corpus.iter_words(), corpus_id=spec.id)
        record = stats.to_record()
        record["normalized"] = normalized_boundary_score(stats)
        record["boundary_units"] = boundary_units(corpus.iter_words(), max_len=2)
        record["slopes"] = {}
        record["curves"] = {}
        for position, freqs in (
            ("initial", stats.initial_freq),
            ("final", stats.final_freq),
            ("all", stats.all_freq),
        ):
            curve = frequency_curve(freqs, position)
            if len(curve.points) >= 3:
                slope, curvature = plateau_zipf_score(curve)
            else:
                slope, curvature = 0.0, 0.0
            record["slopes"][position] = {
                "slope": slope,
                "curvature": curvature,
                "slope_top80": fitted_slope_top_mass(curve, 0.8),
            }
            if "csv" in cfg.formats:
                name = f"{_safe_name(spec.id)}_{position}_curve.csv"
                reports.write_curve_csv(curve.points, position, spec.id, out_dir / name)
                record["curves"][position] = name
                written.append(out_dir / name)
        records.append(record)
    return _emit(cfg, "boundary", records) + written


# ------------------------------------------------------------------- synth

def cmd_synth(args) -> list[Path]:
    lo, sep, hi = args.length.partition(":")
    length = (int(lo), int(hi)) if sep else (int(lo), int(lo))
    spec = SynthSpec(
        kind=args.kind,
        vocab_size=args.vocab_size,
        sentences=args.sentences,
        sentence_length=length,
        bias_strength=args.bias,
        seed=args.seed if args.seed is not None else 0,
    )
    corpus = generate(spec)
    out = Path(args.out_file)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_corpus(corpus, out)
    print(f"wrote {len(corpus)} sentences to {out}")
    return [out]


# ------------------------------------------------------------------ report

def cmd_report(args) -> list[Path]:
    out_dir = Path(args.out)
    if not out_dir.is_dir():
        raise ConfigError(f"output directory not found: {out_dir}")
    path = out_dir / "report.md"
    path.write_text(reports.aggregate_markdown(out_dir), encoding="utf-8")
    print(f"wrote {path}")
    return [path]


# ---------------------------------------------------------------- plumbing

def _emit(cfg: RunConfig, command: str, records: list[dict], extra: dict | None = None) -> list[Path]:
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    payload = reports.report_envelope(command, cfg.hash(), records, extra)
    if "json" in cfg.formats:
        path = out_dir / f"{command}.json"
        reports.write_json(payload, path)
        written.append(path)
    if "csv" in cfg.formats:
        path = out_dir / f"{command}.csv"
        reports.write_csv(records, path)
        written.append(path)
    if "md" in cfg.formats:
        path = out_dir / f"{command}.md"
        if command == "analyze":
            text = reports.analyze_markdown(records)
        elif command == "shuffle_control":
            text = reports.shuffle_markdown(records, (extra or {}).get("summaries", []))
        elif command == "predict":
            text = reports.predict_markdown(records)
        else:
            text = reports.boundary_markdown(records)
        path.write_text(text, encoding="utf-8")
        written.append(path)
    for path in written:
        print(f"wrote {path}")
    return written


def _resolve_config(args) -> RunConfig:
    cfg = None
    if getattr(args, "config", None):
        cfg = load_config(args.config)
    if getattr(args, "corpus", None):
        corpus = CorpusSpec(
            id=args.id or Path(args.corpus).stem,
            path=args.corpus,
            format=args.corpus_format,
            mode=args.mode,
            gold=args.gold,
        )
        if cfg is None:
            cfg = config_from_dict({"corpora": [{"path": args.corpus}]})
        cfg = RunConfig(**{**_as_kwargs(cfg), "corpora": (corpus,)})
    if cfg is None:
        raise ConfigError("provide --config FILE or --corpus PATH")
    cfg = apply_overrides(cfg, args)
    cfg.check_paths()
    return cfg


def _as_kwargs(cfg: RunConfig) -> dict:
    from dataclasses import fields

    return {f.name: getattr(cfg, f.name) for f in fields(cfg)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirgram",
        description="Reading-direction asymmetry analysis for tokenized corpora.",
    )
    parser.add_argument("--version", action="version", version=f"dirgram {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--corpus", help="single corpus path (shorthand for a one-corpus config)")
    common.add_argument("--corpus-format", choices=["plain", "eva"], default="plain")
    common.add_argument("--mode", choices=["baseline", "visual"], default="baseline")
    common.add_argument("--gold", choices=["ltr", "rtl"], default="ltr")
    common.add_argument("--id", help="corpus id for --corpus")
    common.add_argument("--n", help="comma-separated n-gram orders (default 2,3,4)")
    common.add_argument("--smoothing", help="comma-separated: laplace,kneser_ney")
    common.add_argument("--seed", type=int, help="base seed for all derived randomness")
    common.add_argument("--bootstrap-B", dest="bootstrap_B", type=int, help="bootstrap replicates")
    common.add_argument("--alpha", type=float, help="CI significance level")
    common.add_argument("--train-fraction", dest="train_fraction", type=float)
    common.add_argument("--shuffle-runs", dest="shuffle_runs", type=int)
    common.add_argument("--kn-floor-factor", dest="kn_floor_factor", type=float)
    common.add_argument("--keep-chars", dest="keep_chars", help="characters exempt from normalization stripping")
    common.add_argument("--out", help="output directory (default out)")
    common.add_argument("--format", help="comma-separated: json,csv,md")

    sub.add_parser("analyze", parents=[common], help="delta with bootstrap CI per (corpus, n, smoothing)")
    sub.add_parser("shuffle-control", parents=[common], help="original vs within-sentence shuffled delta")
    sub.add_parser("predict", parents=[common], help="train/test direction classification accuracy")
    sub.add_parser("boundary", parents=[common], help="word-boundary entropy/Gini and rank-frequency curves")

    synth = sub.add_parser("synth", help="generate a synthetic corpus file")
    synth.add_argument("--kind", choices=["uniform_iid", "markov_biased", "zipf_words"], required=True)
    synth.add_argument("--vocab-size", dest="vocab_size", type=int, default=20)
    synth.add_argument("--sentences", type=int, default=1000)
    synth.add_argument("--length", default="20:40", help="sentence length range LO:HI")
    synth.add_argument("--bias", type=float, default=0.0)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out-file", dest="out_file", required=True)

    report = sub.add_parser("report", help="aggregate command outputs into one Markdown document")
    report.add_argument("--out", default="out", help="directory holding command outputs")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "synth":
            cmd_synth(args)
        elif args.command == "report":
            cmd_report(args)
        else:
            cfg = _resolve_config(args)
            dispatch = {
                "analyze": cmd_analyze,
                "shuffle-control": cmd_shuffle_control,
                "predict": cmd_predict,
                "boundary": cmd_boundary,
            }
            dispatch[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    except DirgramError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
