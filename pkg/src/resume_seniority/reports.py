"""Static CSV / markdown reports: evaluation table, coefficient tables, corpus statistics."""

from __future__ import annotations

import csv
import io
import math
from typing import Dict, List, Optional, Sequence, Tuple

from .regression.design import EDUCATION_COLUMNS
from .regression.sector import SectorResult

# table name -> [(column header, feature column)]
COEFFICIENT_TABLES: Dict[str, List[Tuple[str, str]]] = {
    "transition": [("Previous Seniority", "previous_seniority")],
    "job_history": [
        ("Total Job Time", "total_months"),
        ("Number of Jobs", "num_jobs"),
        ("Largest Gap Size", "largest_gap_months"),
    ],
    "education": [(c.split("_", 1)[1], c) for c in EDUCATION_COLUMNS],
    "human_capital": [
        ("Number Skills", "num_skills"),
        ("Number Awards", "num_awards"),
        ("Number Certifications", "num_certifications"),
        ("Number Publications", "num_publications"),
        ("Number Patents", "num_patents"),
    ],
    "sentiment": [("Negative Sentiment", "sentiment_negative"), ("Positive Sentiment", "sentiment_positive")],
    "phrases": [
        ("Hedges", "hedges"),
        ("Graded Quantifiers", "graded_quantifiers"),
        ("Qualifiers", "qualifiers"),
        ("Buzzwords", "buzzwords"),
    ],
    "syntax": [
        ("Passive Voice", "passive_voice"),
        ("Fixed Dependencies", "fixed_dep"),
        ("Vocative Dependencies", "vocative_dep"),
        ("Expletive Dependencies", "expletive_dep"),
        ("Discourse Dependencies", "discourse_dep"),
        ("Past Tense", "past_tense"),
        ("Pronouns", "personal_pronouns"),
        ('"To Be" Words', "be_verbs"),
    ],
}

EVALUATION_HEADER = (
    "Job Sector", "Regression Accuracy", "Baseline Accuracy", "Regression F1 Score", "Baseline F1 Score",
    "status", "n_rows", "n_test", "lambda",
)


def format_coefficient(value: float, stderr: Optional[float]) -> str:
    """"0.282±0.017" for an active coefficient; a bare "0.000" only for an exact zero."""
    if value == 0.0:
        return "0.000"
    if stderr is None or math.isnan(stderr):
        return f"{value:.3f}±n/a"
    return f"{value:.3f}±{stderr:.3f}"


def _f6(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.6f}"


def evaluation_rows(results: Sequence[SectorResult]) -> List[List[str]]:
    rows = []
    for r in sorted(results, key=lambda r: r.sector):
        rep = r.report
        rows.append([
            r.sector,
            _f6(rep.accuracy if rep else None),
            _f6(rep.baseline_accuracy if rep else None),
            _f6(rep.macro_f1 if rep else None),
            _f6(rep.baseline_macro_f1 if rep else None),
            r.status,
            str(r.n_rows),
            str(r.n_test),
            "" if r.lam is None else repr(float(r.lam)),
        ])
    return rows


def coefficient_rows(table: str, results: Sequence[SectorResult]) -> Tuple[List[str], List[List[str]]]:
    spec = COEFFICIENT_TABLES[table]
    header = ["Job Sector"] + [h for h, _ in spec]
    rows = []
    for r in sorted(results, key=lambda r: r.sector):
        if r.model is None:
            continue
        m = r.model
        rows.append([r.sector] + [format_coefficient(m.coef(col), m.std_errors.get(col)) for _, col in spec])
    return header, rows


def to_csv(header: Sequence[str], rows: Sequence[Sequence[str]], preamble: str = "") -> str:
    buf = io.StringIO()
    buf.write(preamble)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def to_markdown(header: Sequence[str], rows: Sequence[Sequence[str]], title: str = "") -> str:
    out = []
    if title:
        out += [f"## {title}", ""]
    out.append("| " + " | ".join(header) + " |")
    out.append("|" + "|".join(["---"] + ["---:"] * (len(header) - 1)) + "|")
    for row in rows:
        out.append("| " + " | ".join(row) + " |")
    return "\n".join(out) + "\n"


def stats_csv(name: str, table: Sequence[Tuple[str, int]], preamble: str = "") -> str:
    return to_csv([name, "count"], [[k, str(v)] for k, v in table], preamble)


def plot_stats(tables: Dict[str, Sequence[Tuple[str, int]]], out_dir) -> List[str]:
    """Bar charts of each stats table; returns the written paths. Needs matplotlib."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []
    for name, table in tables.items():
        if not table:
            continue
        labels = [k for k, _ in table]
        counts = [v for _, v in table]
        fig, ax = plt.subplots(figsize=(8, max(2.5, 0.28 * len(labels))))
        ax.barh(range(len(labels))[::-1], counts)
        ax.set_yticks(range(len(labels))[::-1])
        ax.set_yticklabels(labels, fontsize=8)
        ax.set_xlabel("count")
        ax.set_title(name.replace("_", " "))
        fig.tight_layout()
        path = f"{out_dir}/stats_{name}.png"
        # fixed metadata keeps the image bytes reproducible
        fig.savefig(path, dpi=100, metadata={"Software": None})
        plt.close(fig)
        written.append(path)
    return written
