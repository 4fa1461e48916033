"""End-to-end run: read, deduplicate, extract, assemble, fit per sector, write artifacts."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .education import DegreeTermTable, default_table
from .extract import ExtractionContext, ResumeRecord, extract_record
from .language.lexicons import LexiconSet, default_lexicons
from .regression.design import FeatureRow, group_by_sector, matrix, write_features_csv
from .regression.metrics import evaluate
from .regression.sector import (
    MIN_ROWS,
    TEST_FRACTION,
    SectorResult,
    fit_sector,
    model_json,
    sector_seed,
    standardize_with,
)
from .regression.selection import stratified_split
from .reports import (
    COEFFICIENT_TABLES,
    EVALUATION_HEADER,
    coefficient_rows,
    evaluation_rows,
    plot_stats,
    stats_csv,
    to_csv,
    to_markdown,
)
from .resume import Resume, Sector, YearMonth, corpus_stats, content_hash, parse_year_month, read_corpus
from .seniority import DEFAULT_TAU, EmbeddingStore, TitleClassifier, load_default_embeddings

logger = logging.getLogger(__name__)

TOOL = "resume-seniority"
# settings that change where or how fast a run happens, never what it produces
_NON_SEMANTIC = ("jobs", "out")


class PipelineError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.message = message

    def report(self) -> Dict[str, str]:
        return {"error": "pipeline-failure", "stage": self.stage, "message": self.message}


@dataclass
class PipelineConfig:
    corpus: Optional[str] = None
    out: str = "out"
    snapshot: str = "2017-08"
    lexicon_dir: Optional[str] = None
    embeddings: Optional[str] = None  # None -> the bundled demo title embedding
    degree_terms: Optional[str] = None
    tau: float = DEFAULT_TAU
    lam: Optional[float] = None  # None -> cross-validated
    sectors: Optional[List[str]] = None
    seed: int = 0
    jobs: int = 1
    min_rows: int = MIN_ROWS
    plots: bool = False

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError("tau must be >= 0")
        if self.lam is not None and self.lam < 0:
            raise ValueError("lambda must be >= 0")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        self.snapshot_date()
        if self.sectors is not None:
            self.sectors = sorted({Sector.parse(s).value for s in self.sectors})

    def snapshot_date(self) -> YearMonth:
        ym = parse_year_month(self.snapshot)
        if ym is None:
            raise ValueError(f"bad snapshot date {self.snapshot!r}")
        return ym

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Dict[str, object]) -> "PipelineConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)

    @classmethod
    def from_file(cls, path) -> "PipelineConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def semantic_dict(self) -> Dict[str, object]:
        return {k: v for k, v in self.to_dict().items() if k not in _NON_SEMANTIC}

    def config_hash(self) -> str:
        canon = json.dumps(self.semantic_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def provenance(config: PipelineConfig) -> Dict[str, object]:
    prov = {"tool": TOOL, "version": __version__, "config_hash": config.config_hash(),
            "config": config.semantic_dict()}
    if config.corpus and Path(config.corpus).is_file():
        prov["corpus_sha256"] = file_sha256(config.corpus)
    return prov


def csv_preamble(prov: Dict[str, object]) -> str:
    return "# provenance: " + json.dumps(prov, sort_keys=True, separators=(",", ":")) + "\n"


def build_context(config: PipelineConfig) -> ExtractionContext:
    emb = EmbeddingStore.from_file(config.embeddings) if config.embeddings else load_default_embeddings()
    lex = LexiconSet.load(config.lexicon_dir) if config.lexicon_dir else default_lexicons()
    table = DegreeTermTable.from_file(config.degree_terms) if config.degree_terms else default_table()
    return ExtractionContext(
        classifier=TitleClassifier(embeddings=emb, tau=config.tau),
        lexicons=lex,
        degree_table=table,
        snapshot=config.snapshot_date(),
    )


# ---------------------------------------------------------------- stages

_WORKER_CTX: Optional[ExtractionContext] = None


def _init_worker(config_dict: Dict[str, object]) -> None:
    global _WORKER_CTX
    _WORKER_CTX = build_context(PipelineConfig.from_dict(config_dict))


def _extract_chunk(chunk: Sequence[Resume]) -> List[ResumeRecord]:
    return [extract_record(r, _WORKER_CTX) for r in chunk]


def _chunks(items: Sequence, n: int) -> List[Sequence]:
    size = max(1, -(-len(items) // n))
    return [items[i:i + size] for i in range(0, len(items), size)]


def load_resumes(config: PipelineConfig, counters: Counter) -> List[Resume]:
    if not config.corpus:
        raise PipelineError("read", "no corpus given")
    try:
        result = read_corpus(config.corpus, strict=True)
    except OSError as exc:
        raise PipelineError("read", str(exc)) from exc
    except ValueError as exc:
        raise PipelineError("parse", str(exc)) from exc
    counters["parse"] += len(result.resumes)
    for kind, n in sorted(result.warnings.counts.items()):
        logger.info("parse warning %s: %d", kind, n)
    seen, unique = set(), []
    for r in result.resumes:
        counters["dedup"] += 1
        h = content_hash(r)
        if h not in seen:
            seen.add(h)
            unique.append(r)
    if config.sectors is not None:
        keep = set(config.sectors)
        unique = [r for r in unique if r.sector.value in keep]
    return unique


def extract_all(resumes: Sequence[Resume], config: PipelineConfig, counters: Counter) -> List[ResumeRecord]:
    if config.jobs == 1 or len(resumes) < 2:
        ctx = build_context(config)
        records = [extract_record(r, ctx) for r in resumes]
    else:
        # several chunks per worker for load balance; map keeps input order
        chunks = _chunks(list(resumes), config.jobs * 4)
        with ProcessPoolExecutor(config.jobs, initializer=_init_worker, initargs=(config.to_dict(),)) as ex:
            records = [rec for part in ex.map(_extract_chunk, chunks) for rec in part]
    counters["extract"] += len(records)
    return records


def assemble_rows(records: Sequence[ResumeRecord], counters: Counter) -> List[FeatureRow]:
    rows = []
    for rec in records:
        counters["assemble"] += 1
        row = rec.row()
        if row is not None:
            rows.append(row)
    return rows


def _fit_one(args) -> SectorResult:
    sector, rows, seed, lam, min_rows = args
    return fit_sector(sector, rows, seed=seed, lam=lam, min_rows=min_rows)


def fit_all(rows: Sequence[FeatureRow], config: PipelineConfig) -> List[SectorResult]:
    groups = group_by_sector(rows)
    sectors = config.sectors if config.sectors is not None else sorted(s.value for s in Sector)
    tasks = [(s, groups.get(s, []), config.seed, config.lam, config.min_rows) for s in sectors]
    if config.jobs == 1:
        return [_fit_one(t) for t in tasks]
    with ProcessPoolExecutor(min(config.jobs, len(tasks))) as ex:
        return list(ex.map(_fit_one, tasks))


def evaluate_saved(rows: Sequence[FeatureRow], models: Dict[str, object], seed: int):
    """Re-derive each sector's held-out split from the seed and score the saved model on it."""
    out = {}
    for sector, sector_rows in sorted(group_by_sector(rows).items()):
        model = models.get(sector)
        if model is None:
            continue
        X, y = matrix(sector_rows)
        split_seq, _ = sector_seed(seed, sector).spawn(2)
        _, test = stratified_split(y, TEST_FRACTION, np.random.default_rng(split_seq))
        out[sector] = evaluate(model, standardize_with(model, X[test]), y[test])
    return out


# ---------------------------------------------------------------- writers

def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_features(rows: Sequence[FeatureRow], out: Path, prov) -> Path:
    path = out / "features.csv"
    out.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        write_features_csv(rows, fh, csv_preamble(prov))
    return path


def write_models(results: Sequence[SectorResult], out: Path, prov) -> List[Path]:
    paths = []
    for r in results:
        if r.model is None:
            continue
        extra = {"provenance": prov, "status": r.status, "cv_scores": r.cv_scores}
        path = out / "models" / f"{Sector(r.sector).slug}.json"
        _write(path, model_json(r.model, extra))
        paths.append(path)
    return paths


def write_evaluation(results: Sequence[SectorResult], out: Path, prov) -> Path:
    rows = evaluation_rows(results)
    _write(out / "evaluation.csv", to_csv(EVALUATION_HEADER, rows, csv_preamble(prov)))
    _write(out / "evaluation.md", to_markdown(EVALUATION_HEADER, rows, "Regression vs. majority baseline"))
    return out / "evaluation.csv"


def write_coefficients(results: Sequence[SectorResult], out: Path, prov) -> List[Path]:
    paths = []
    md = []
    for table in COEFFICIENT_TABLES:
        header, rows = coefficient_rows(table, results)
        path = out / f"coefficients_{table}.csv"
        _write(path, to_csv(header, rows, csv_preamble(prov)))
        md.append(to_markdown(header, rows, table.replace("_", " ").title()))
        paths.append(path)
    _write(out / "coefficients.md", "\n".join(md))
    return paths


def write_stats(resumes: Sequence[Resume], out: Path, prov, snapshot: YearMonth, plots: bool,
                counters: Optional[Counter] = None) -> List[Path]:
    report = corpus_stats(resumes, snapshot=snapshot)
    if counters is not None:
        counters["stats"] += report.total
    paths = []
    for name, table in report.tables().items():
        path = out / f"stats_{name}.csv"
        _write(path, stats_csv(name, table, csv_preamble(prov)))
        paths.append(path)
    if plots:
        try:
            paths += [Path(p) for p in plot_stats(report.tables(), out)]
        except ImportError:
            logger.warning("matplotlib not installed; skipping plots")
    return paths


@dataclass
class RunResult:
    out: Path
    counters: Dict[str, int]
    results: List[SectorResult]
    n_resumes: int
    n_rows: int


def run(config: PipelineConfig) -> RunResult:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    counters: Counter = Counter()
    prov = provenance(config)
    resumes = load_resumes(config, counters)
    try:
        records = extract_all(resumes, config, counters)
    except Exception as exc:  # worker failures surface here
        raise PipelineError("extract", f"{type(exc).__name__}: {exc}") from exc
    rows = assemble_rows(records, counters)
    write_features(rows, out, prov)
    try:
        results = fit_all(rows, config)
    except Exception as exc:
        raise PipelineError("fit", f"{type(exc).__name__}: {exc}") from exc
    write_models(results, out, prov)
    write_evaluation(results, out, prov)
    write_coefficients(results, out, prov)
    write_stats(resumes, out, prov, config.snapshot_date(), config.plots, counters)
    summary = {
        "provenance": prov,
        "counters": dict(sorted(counters.items())),
        "resumes": len(resumes),
        "feature_rows": len(rows),
        "sectors": {r.sector: {"status": r.status, "n_rows": r.n_rows, "message": r.message} for r in results},
    }
    _write(out / "run.json", json.dumps(summary, indent=2, sort_keys=True) + "\n")
    logger.info("run complete: %d resumes, %d rows, %d sectors", len(resumes), len(rows), len(results))
    return RunResult(out, dict(counters), results, len(resumes), len(rows))


def default_jobs() -> int:
    return max(1, min(8, os.cpu_count() or 1))
