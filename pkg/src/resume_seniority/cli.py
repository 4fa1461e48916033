"""resume-seniority command line."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from collections import Counter
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__
from .language.features import resume_text
from .lint import lint_text
from .pipeline import (
    PipelineConfig,
    PipelineError,
    assemble_rows,
    build_context,
    csv_preamble,
    evaluate_saved,
    extract_all,
    fit_all,
    load_resumes,
    provenance,
    run,
    write_coefficients,
    write_evaluation,
    write_features,
    write_models,
    write_stats,
    _write,
)
from .regression.design import read_features_csv
from .regression.sector import SectorResult, model_from_dict
from .reports import EVALUATION_HEADER, to_csv
from .resume import ResumeError, Sector, parse_resume, read_corpus
from .seniority import job_order
from .synthetic import InfeasibleSpec, SyntheticSpec, generate, write_synthetic

logger = logging.getLogger("resume_seniority")

EXIT_OK, EXIT_FINDINGS, EXIT_ERROR = 0, 1, 2

_CONFIG_FLAGS = {
    "corpus": "corpus", "out": "out", "seed": "seed", "lam": "lam", "tau": "tau", "snapshot_date": "snapshot",
    "jobs": "jobs", "embeddings": "embeddings", "lexicon_dir": "lexicon_dir", "degree_terms": "degree_terms",
    "min_rows": "min_rows", "plots": "plots",
}


def _config(args) -> PipelineConfig:
    base = PipelineConfig.from_file(args.config).to_dict() if getattr(args, "config", None) else {}
    for flag, key in _CONFIG_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None and value is not False:
            base[key] = value
    if getattr(args, "sector", None):
        base["sectors"] = args.sector
    return PipelineConfig.from_dict(base)


def _fail(message: str, stage: str = "cli") -> int:
    print(json.dumps({"error": "failure", "stage": stage, "message": message}), file=sys.stderr)
    return EXIT_ERROR


# ---------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    cfg = _config(args)
    if not cfg.corpus:
        return _fail("--corpus is required")
    result = read_corpus(cfg.corpus, strict=False)
    report = {
        "lines": result.lines,
        "parsed": len(result.resumes),
        "errors": [str(e) for e in result.errors[:50]],
        "error_count": len(result.errors),
        "warnings": dict(sorted(result.warnings.counts.items())),
    }
    from .resume import content_hash

    report["duplicates"] = len(result.resumes) - len({content_hash(r) for r in result.resumes})
    print(json.dumps(report, indent=2))
    return EXIT_FINDINGS if result.errors else EXIT_OK


def cmd_stats(args) -> int:
    cfg = _config(args)
    resumes = load_resumes(cfg, Counter())
    out = Path(cfg.out)
    paths = write_stats(resumes, out, provenance(cfg), cfg.snapshot_date(), cfg.plots)
    for p in paths:
        print(p)
    return EXIT_OK


def cmd_extract(args) -> int:
    cfg = _config(args)
    counters: Counter = Counter()
    resumes = load_resumes(cfg, counters)
    rows = assemble_rows(extract_all(resumes, cfg, counters), counters)
    path = write_features(rows, Path(cfg.out), provenance(cfg))
    print(f"{path}: {len(rows)} rows from {len(resumes)} resumes")
    return EXIT_OK


def cmd_classify(args) -> int:
    cfg = _config(args)
    ctx = build_context(cfg)
    if args.title:
        for t in args.title:
            c = ctx.classifier.classify(t)
            print(f"{'senior' if c.is_senior else 'non-senior'}\t{c.describe()}\t{t}")
        return EXIT_OK
    if not cfg.corpus:
        return _fail("give --title or --corpus")
    resumes = load_resumes(cfg, Counter())
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["id", "sector", "recency", "title", "senior", "evidence"])
    for r in resumes:
        for rank, i in enumerate(job_order(r, ctx.snapshot)):
            c = ctx.classifier.classify(r.experience[i].title)
            w.writerow([r.id, r.sector.value, rank, r.experience[i].title, int(c.is_senior), c.describe()])
    return EXIT_OK


def _rows_for(cfg: PipelineConfig, features: Optional[str]):
    if features:
        with open(features, encoding="utf-8") as fh:
            rows = read_features_csv(fh)
        if cfg.sectors is not None:
            rows = [r for r in rows if r.sector in set(cfg.sectors)]
        return rows
    counters: Counter = Counter()
    return assemble_rows(extract_all(load_resumes(cfg, counters), cfg, counters), counters)


def cmd_train(args) -> int:
    cfg = _config(args)
    rows = _rows_for(cfg, args.features)
    results = fit_all(rows, cfg)
    out, prov = Path(cfg.out), provenance(cfg)
    write_models(results, out, prov)
    write_evaluation(results, out, prov)
    for r in results:
        lam = "" if r.lam is None else f" lambda={r.lam:.4g}"
        print(f"{r.sector}: {r.status} ({r.n_rows} rows){lam}")
    return EXIT_OK


def _load_models(models_dir: Path) -> Dict[str, object]:
    models = {}
    for path in sorted(models_dir.glob("*.json")):
        d = json.loads(path.read_text(encoding="utf-8"))
        models[d["sector"]] = model_from_dict(d)
    return models


def cmd_evaluate(args) -> int:
    cfg = _config(args)
    rows = _rows_for(cfg, args.features)
    models = _load_models(Path(args.models or Path(cfg.out) / "models"))
    if not models:
        return _fail("no models found")
    reports = evaluate_saved(rows, models, cfg.seed)
    per_sector = Counter(r.sector for r in rows)
    table = []
    for sector, rep in sorted(reports.items()):
        table.append([sector, f"{rep.accuracy:.6f}", f"{rep.baseline_accuracy:.6f}", f"{rep.macro_f1:.6f}",
                      f"{rep.baseline_macro_f1:.6f}", "ok", str(per_sector[sector]), str(rep.confusion.n), repr(models[sector].lam)])
    sys.stdout.write(to_csv(EVALUATION_HEADER, table))
    return EXIT_OK


def cmd_report(args) -> int:
    cfg = _config(args)
    out = Path(cfg.out)
    models = _load_models(Path(args.models or out / "models"))
    if not models:
        return _fail("no models found")
    results = [SectorResult(s, "ok", m.n_train, lam=m.lam, model=m) for s, m in models.items()]
    for p in write_coefficients(results, out, provenance(cfg)):
        print(p)
    return EXIT_OK


def _load_single(path: str):
    text = Path(path).read_text(encoding="utf-8").strip()
    if not text:
        raise ResumeError("empty file")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) > 1:
        try:
            return parse_resume(text)  # pretty-printed single object
        except ResumeError:
            raise ResumeError("expected exactly one resume") from None
    return parse_resume(lines[0], line=1)


def cmd_lint(args) -> int:
    if args.text is not None:
        text = args.text
        source = "<text>"
    else:
        try:
            resume = _load_single(args.file)
        except (OSError, ResumeError) as exc:
            return _fail(str(exc), "parse")
        text = resume_text(resume)
        source = args.file
    report = lint_text(text)
    for d in report.diagnostics:
        print(d.render(source))
    summary = {"diagnostics": len(report.diagnostics), "tokens": report.n_tokens, "counts": report.counts}
    print(json.dumps(summary, sort_keys=True))
    return EXIT_FINDINGS if report.diagnostics and args.strict else EXIT_OK


def cmd_gen_corpus(args) -> int:
    d = json.loads(Path(args.spec).read_text(encoding="utf-8")) if args.spec else {}
    for key in ("size", "seed", "base_rate"):
        v = getattr(args, key)
        if v is not None:
            d[key] = v
    try:
        spec = SyntheticSpec.from_dict(d)
        corpus = generate(spec)
    except (InfeasibleSpec, TypeError) as exc:
        return _fail(str(exc), "gen-corpus")
    truth = write_synthetic(corpus, args.out)
    rate = "n/a" if not corpus.labels else f"{corpus.realized_rate:.4f}"
    print(f"{args.out}: {len(corpus.resumes)} resumes, senior rate {rate}; truth in {truth}")
    return EXIT_OK


def cmd_run(args) -> int:
    cfg = _config(args)
    result = run(cfg)
    skipped = [r.sector for r in result.results if r.status != "ok"]
    print(f"{result.out}: {result.n_resumes} resumes, {result.n_rows} rows, "
          f"{len(result.results) - len(skipped)} sectors fitted, {len(skipped)} skipped")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser, corpus: bool = True) -> None:
    p.add_argument("--config", help="JSON file with PipelineConfig fields; flags override it")
    if corpus:
        p.add_argument("--corpus", help="NDJSON resume corpus")
    p.add_argument("--out", help="output directory")
    p.add_argument("--seed", type=int)
    p.add_argument("--sector", action="append", help="restrict to a sector (repeatable)")
    p.add_argument("--lambda", dest="lam", type=float, help="fixed L1 strength (default: cross-validated)")
    p.add_argument("--tau", type=float, help="embedding-distance threshold for senior titles")
    p.add_argument("--snapshot-date", dest="snapshot_date", help="date that ongoing jobs end at (YYYY-MM)")
    p.add_argument("--jobs", type=int, help="worker processes")
    p.add_argument("--embeddings", help="word vectors file (word v1 .. vd per line)")
    p.add_argument("--lexicon-dir", dest="lexicon_dir", help="directory of lexicon override files")
    p.add_argument("--degree-terms", dest="degree_terms", help="level<TAB>term file replacing the degree lists")
    p.add_argument("--min-rows", dest="min_rows", type=int, help="smallest sector that gets a model")
    p.add_argument("--plots", action="store_true", help="also write PNG charts (needs matplotlib)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="resume-seniority", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    for name, func, help_ in (
        ("validate", cmd_validate, "parse a corpus and report errors and warnings"),
        ("stats", cmd_stats, "corpus statistics tables"),
        ("extract", cmd_extract, "write the feature matrix"),
        ("run", cmd_run, "full pipeline: features, models, evaluation, reports"),
    ):
        p = sub.add_parser(name, help=help_)
        _common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("classify", help="classify job titles as senior / non-senior")
    _common(p)
    p.add_argument("--title", action="append", help="title to classify (repeatable)")
    p.set_defaults(func=cmd_classify)

    for name, func, help_ in (
        ("train", cmd_train, "fit per-sector models"),
        ("evaluate", cmd_evaluate, "score saved models on their held-out split"),
    ):
        p = sub.add_parser(name, help=help_)
        _common(p)
        p.add_argument("--features", help="features.csv from `extract` (instead of --corpus)")
        if name == "evaluate":
            p.add_argument("--models", help="directory of model JSON files (default OUT/models)")
        p.set_defaults(func=func)

    p = sub.add_parser("report", help="coefficient tables from saved models")
    _common(p, corpus=False)
    p.add_argument("--models", help="directory of model JSON files (default OUT/models)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("lint", help="writing diagnostics for one resume")
    p.add_argument("file", nargs="?", help="file holding one resume (JSON)")
    p.add_argument("--text", help="lint this text instead of a resume file")
    p.add_argument("--strict", action="store_true", help="exit 1 when any diagnostic is emitted")
    p.set_defaults(func=cmd_lint)

    p = sub.add_parser("gen-corpus", help="generate a synthetic corpus with planted coefficients")
    p.add_argument("--out", required=True, help="corpus file to write")
    p.add_argument("--spec", help="JSON file with SyntheticSpec fields")
    p.add_argument("--size", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--base-rate", dest="base_rate", type=float)
    p.set_defaults(func=cmd_gen_corpus)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "lint" and args.file is None and args.text is None:
        ap.error("lint needs a FILE or --text")
    try:
        return args.func(args)
    except PipelineError as exc:
        print(json.dumps(exc.report()), file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        return _fail(f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
