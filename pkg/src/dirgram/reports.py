"""Report serialization: canonical JSON, CSV tables, Markdown summaries.

JSON reports are written with sorted keys and a fixed float
representation, so two runs with the same config hash produce
byte-identical files except for the `generated_at` field, which is the
only volatile value and lives in its own key.
"""

from __future__ import annotations

import csv
import io
import json
import time
from pathlib import Path

from . import __version__


def report_envelope(command: str, config_hash: str, results, extra: dict | None = None) -> dict:
    body = {
        "tool": "dirgram",
        "version": __version__,
        "command": command,
        "config_hash": config_hash,
        "generated_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "results": results,
    }
    if extra:
        body.update(extra)
    return body


def write_json(payload: dict, path: Path) -> None:
    path.write_text(
        json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
    )


def write_csv(rows: list[dict], path: Path) -> None:
    if not rows:
        path.write_text("", encoding="utf-8")
        return
    fields: list[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(row.get(k)) for k in fields})
    path.write_text(buf.getvalue(), encoding="utf-8")


def _csv_cell(value):
    if isinstance(value, float):
        return format(value, ".10g")
    if isinstance(value, (list, tuple)):
        return ";".join(_csv_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    return value


def fmt_delta(x: float) -> str:
    return f"{x:+.4f}"


def fmt_ci(ci) -> str:
    if not ci:
        return "-"
    return f"({ci[0]:.4f}, {ci[1]:.4f})"


def direction_word(delta: float) -> str:
    if delta > 0:
        return "RTL lower perplexity"
    if delta < 0:
        return "LTR lower perplexity"
    return "no preference"


def markdown_table(headers: list[str], rows: list[list[str]]) -> str:
    lines = [
        "| " + " | ".join(headers) + " |",
        "| " + " | ".join("---" for _ in headers) + " |",
    ]
    lines.extend("| " + " | ".join(str(c) for c in row) + " |" for row in rows)
    return "\n".join(lines) + "\n"


def analyze_markdown(records: list[dict]) -> str:
    out = ["# Directional asymmetry\n"]
    by_corpus: dict[str, list[dict]] = {}
    for rec in records:
        by_corpus.setdefault(rec["corpus_id"], []).append(rec)
    for corpus_id, recs in by_corpus.items():
        out.append(f"## {corpus_id}\n")
        for rec in recs:
            method = rec["smoothing"]["method"]
            line = (
                f"- n={rec['n']}, {method}: delta {fmt_delta(rec['delta'])} "
                f"({direction_word(rec['delta'])})"
            )
            if rec.get("ci"):
                pct = round((1 - rec["alpha"]) * 100)
                line += f" with {pct}% CI {fmt_ci(rec['ci'])}"
            out.append(line)
        out.append("")
    return "\n".join(out)


def shuffle_markdown(records: list[dict], summaries: list[dict]) -> str:
    out = ["# Shuffle control\n"]
    headers = ["Condition", "n", "smoothing", "P_LTR", "P_RTL", "delta", "95% CI"]
    by_corpus: dict[str, list[dict]] = {}
    for rec in records:
        by_corpus.setdefault(rec["corpus_id"], []).append(rec)
    for corpus_id, recs in by_corpus.items():
        out.append(f"## {corpus_id}\n")
        rows = [
            [
                rec["condition"],
                rec["n"],
                rec["smoothing"]["method"],
                f"{rec['ppl_ltr']:.2f}",
                f"{rec['ppl_rtl']:.2f}",
                fmt_delta(rec["delta"]),
                fmt_ci(rec.get("ci")),
            ]
            for rec in recs
        ]
        out.append(markdown_table(headers, rows))
    if summaries:
        out.append("## Effect-size ratios\n")
        rows = [
            [
                s["corpus_id"],
                s["n"],
                s["smoothing"],
                fmt_delta(s["delta_original"]),
                f"{s['mean_abs_delta_shuffled']:.5f}",
                f"{s['ratio']:.1f}x" if s["ratio"] is not None else "inf",
                f"{s['ci_covers_zero']}/{s['shuffle_runs']}",
            ]
            for s in summaries
        ]
        out.append(
            markdown_table(
                [
                    "corpus",
                    "n",
                    "smoothing",
                    "delta original",
                    "mean |delta| shuffled",
                    "ratio",
                    "CI covers 0",
                ],
                rows,
            )
        )
    return "\n".join(out)


def predict_markdown(records: list[dict]) -> str:
    out = ["# Predictive validation\n"]
    by_corpus: dict[str, dict[int, dict]] = {}
    n_values: list[int] = []
    for rec in records:
        by_corpus.setdefault(rec["corpus_id"], {})[rec["n"]] = rec
        if rec["n"] not in n_values:
            n_values.append(rec["n"])
    n_values.sort()
    headers = ["Corpus", "Gold", "Test sentences"]
    for n in n_values:
        headers += [f"n={n} delta", f"n={n} accuracy"]
    rows = []
    for corpus_id, by_n in by_corpus.items():
        any_rec = next(iter(by_n.values()))
        row = [corpus_id, any_rec["gold"].upper(), any_rec["test_sentences"]]
        for n in n_values:
            rec = by_n.get(n)
            if rec is None:
                row += ["-", "-"]
            else:
                row += [fmt_delta(rec["delta_test"]), f"{rec['accuracy']:.3f}"]
        rows.append(row)
    out.append(markdown_table(headers, rows))
    return "\n".join(out)


def boundary_markdown(records: list[dict]) -> str:
    out = ["# Word-boundary diagnostics\n"]
    headers = [
        "Corpus",
        "distinct initial",
        "distinct final",
        "H initial",
        "H final",
        "delta H",
        "G initial",
        "G final",
        "delta G",
        "slope initial",
        "slope final",
    ]
    rows = []
    for rec in records:
        rows.append(
            [
                rec["corpus_id"],
                rec["initial"]["distinct"],
                rec["final"]["distinct"],
                f"{rec['initial']['entropy_nats']:.4f}",
                f"{rec['final']['entropy_nats']:.4f}",
                f"{rec['delta_entropy']:+.4f}",
                f"{rec['initial']['gini']:.4f}",
                f"{rec['final']['gini']:.4f}",
                f"{rec['delta_gini']:+.4f}",
                f"{rec['slopes']['initial']['slope']:.3f}",
                f"{rec['slopes']['final']['slope']:.3f}",
            ]
        )
    out.append(markdown_table(headers, rows))
    return "\n".join(out)


def write_curve_csv(points, position: str, corpus_id: str, path: Path) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rank", "count", "log_rank", "log_count", "position", "corpus_id"])
    for rank, count, log_rank, log_count in points:
        writer.writerow(
            [rank, count, format(log_rank, ".10g"), format(log_count, ".10g"), position, corpus_id]
        )
    path.write_text(buf.getvalue(), encoding="utf-8")


def aggregate_markdown(out_dir: Path) -> str:
    """Combine command outputs found in *out_dir* into one document."""
    sections = []
    order = [
        ("analyze.json", "results", analyze_markdown),
        ("shuffle_control.json", None, None),
        ("predict.json", "results", predict_markdown),
        ("boundary.json", "results", boundary_markdown),
    ]
    for filename, key, renderer in order:
        path = out_dir / filename
        if not path.is_file():
            continue
        payload = json.loads(path.read_text(encoding="utf-8"))
        if filename == "shuffle_control.json":
            sections.append(
                shuffle_markdown(payload["results"], payload.get("summaries", []))
            )
        else:
            sections.append(renderer(payload[key]))
    if not sections:
        return "# dirgram report\n\n(no command outputs found)\n"
    header = f"# dirgram report\n\ntool version {__version__}\n"
    return header + "\n\n".join(sections)
