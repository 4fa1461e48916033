import csv
import json
from pathlib import Path

import pytest

from resume_seniority.cli import main
from resume_seniority.language.features import extract_language_features
from resume_seniority.lint import lint_text
from resume_seniority.pipeline import PipelineConfig, PipelineError, run
from resume_seniority.reports import format_coefficient
from resume_seniority.resume import read_corpus, serialize_resume
from resume_seniority.synthetic import SyntheticSpec, generate, write_synthetic

from conftest import job, record


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "small.ndjson"
    spec = SyntheticSpec(size=420, seed=2, sector_weights={"Finance": 1.0, "Marketing": 0.08})
    write_synthetic(generate(spec), path)
    return path


@pytest.fixture(scope="module")
def run_dir(corpus, tmp_path_factory):
    out = tmp_path_factory.mktemp("run")
    result = run(PipelineConfig(corpus=str(corpus), out=str(out), sectors=["Finance", "Marketing"], seed=1))
    return out, result


def _csv(path):
    lines = [ln for ln in Path(path).read_text().splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


class TestRun:
    def test_counters_touch_each_resume_once(self, corpus, run_dir):
        _, result = run_dir
        n = len(read_corpus(corpus).resumes)
        assert result.n_resumes == n
        for stage in ("parse", "dedup", "extract", "assemble", "stats"):
            assert result.counters[stage] == n, stage

    def test_skipped_sector_listed(self, run_dir):
        out, _ = run_dir
        rows = {r["Job Sector"]: r for r in _csv(out / "evaluation.csv")}
        assert rows["Marketing"]["status"] == "insufficient-data"
        assert rows["Marketing"]["Regression Accuracy"] == ""
        assert rows["Finance"]["status"] == "ok"
        assert float(rows["Finance"]["Regression F1 Score"]) > float(rows["Finance"]["Baseline F1 Score"])

    def test_artifacts_carry_provenance(self, run_dir):
        out, _ = run_dir
        files = sorted(out.glob("*.csv"))
        assert {p.name for p in files} >= {"features.csv", "evaluation.csv", "coefficients_transition.csv",
                                           "coefficients_syntax.csv", "stats_sectors.csv"}
        hashes = set()
        for p in files:
            first = p.read_text().splitlines()[0]
            assert first.startswith("# provenance: ")
            hashes.add(json.loads(first[len("# provenance: "):])["config_hash"])
        model = json.loads((out / "models" / "finance.json").read_text())
        hashes.add(model["provenance"]["config_hash"])
        assert len(hashes) == 1

    def test_coefficient_table_format(self, run_dir):
        out, _ = run_dir
        for row in _csv(out / "coefficients_human_capital.csv") + _csv(out / "coefficients_syntax.csv"):
            for k, v in row.items():
                if k == "Job Sector":
                    continue
                assert v == "0.000" or "±" in v

    def test_evaluate_reproduces_run(self, corpus, run_dir, capsys):
        out, _ = run_dir
        rc = main(["evaluate", "--features", str(out / "features.csv"), "--models", str(out / "models"),
                   "--seed", "1"])
        assert rc == 0
        got = {r["Job Sector"]: r for r in csv.DictReader(capsys.readouterr().out.splitlines())}
        ref = {r["Job Sector"]: r for r in _csv(out / "evaluation.csv")}
        for col in ("Regression Accuracy", "Baseline Accuracy", "Regression F1 Score", "Baseline F1 Score"):
            assert got["Finance"][col] == ref["Finance"][col]

    def test_report_from_saved_models(self, run_dir, tmp_path, capsys):
        out, _ = run_dir
        assert main(["report", "--models", str(out / "models"), "--out", str(tmp_path)]) == 0
        a = [ln for ln in (tmp_path / "coefficients_job_history.csv").read_text().splitlines()[1:]]
        b = [ln for ln in (out / "coefficients_job_history.csv").read_text().splitlines()[1:]]
        assert a == b

    def test_missing_corpus_is_pipeline_error(self, tmp_path):
        with pytest.raises(PipelineError):
            run(PipelineConfig(corpus=str(tmp_path / "nope.ndjson"), out=str(tmp_path)))


def test_format_coefficient():
    assert format_coefficient(0.0, None) == "0.000"
    assert format_coefficient(-0.0, 0.1) == "0.000"
    assert format_coefficient(0.2817, 0.0171) == "0.282±0.017"
    assert format_coefficient(-1.5, float("nan")) == "-1.500±n/a"


def test_config_hash_ignores_jobs_and_out():
    a = PipelineConfig(corpus="c", out="x", jobs=1)
    b = PipelineConfig(corpus="c", out="y", jobs=8)
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != PipelineConfig(corpus="c", seed=5).config_hash()


def test_config_validation(tmp_path):
    with pytest.raises(ValueError):
        PipelineConfig(tau=-1)
    with pytest.raises(ValueError):
        PipelineConfig(snapshot="soon")
    with pytest.raises(ValueError):
        PipelineConfig.from_dict({"colour": 1})
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 4, "sectors": ["stem"]}))
    loaded = PipelineConfig.from_file(cfg)
    assert loaded.seed == 4 and loaded.sectors == ["Science Technology Engineering Mathematics"]


# ---------------------------------------------------------------- CLI

class TestCLI:
    def test_gen_corpus(self, tmp_path, capsys):
        out = tmp_path / "g.ndjson"
        assert main(["gen-corpus", "--out", str(out), "--size", "0"]) == 0
        assert out.read_bytes() == b""
        assert main(["gen-corpus", "--out", str(out), "--size", "5", "--base-rate", "1.5"]) == 2
        assert "error" in capsys.readouterr().err

    def test_validate(self, corpus, tmp_path, capsys):
        assert main(["validate", "--corpus", str(corpus)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["error_count"] == 0 and report["parsed"] == 420
        bad = tmp_path / "bad.ndjson"
        bad.write_text('{"id": "x"\n')
        assert main(["validate", "--corpus", str(bad)]) == 1

    def test_stats(self, corpus, tmp_path, capsys):
        assert main(["stats", "--corpus", str(corpus), "--out", str(tmp_path)]) == 0
        rows = _csv(tmp_path / "stats_sectors.csv")
        assert sum(int(r["count"]) for r in rows) == 420

    def test_extract_and_train(self, corpus, tmp_path, capsys):
        assert main(["extract", "--corpus", str(corpus), "--out", str(tmp_path), "--sector", "Finance"]) == 0
        assert main(["train", "--features", str(tmp_path / "features.csv"), "--out", str(tmp_path),
                     "--lambda", "0.01", "--sector", "Finance"]) == 0
        assert "Finance: ok" in capsys.readouterr().out
        model = json.loads((tmp_path / "models" / "finance.json").read_text())
        assert model["lambda"] == 0.01

    def test_classify_titles(self, capsys):
        assert main(["classify", "--title", "Senior Engineer", "--title", "Barista", "--tau", "0"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0].startswith("senior\texact:senior")
        assert out[1].startswith("non-senior\tnone")

    def test_classify_corpus(self, corpus, capsys):
        assert main(["classify", "--corpus", str(corpus), "--sector", "Marketing"]) == 0
        rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
        assert rows and {r["sector"] for r in rows} == {"Marketing"}

    def test_missing_corpus_exit_code(self, tmp_path, capsys):
        assert main(["run", "--corpus", str(tmp_path / "missing.ndjson"), "--out", str(tmp_path)]) == 2
        err = json.loads(capsys.readouterr().err)
        assert err["stage"] == "read"


class TestLint:
    def test_passive_span(self, capsys):
        assert main(["lint", "--text", "Sales were increased 30%"]) == 0
        out = capsys.readouterr().out
        assert "passive_voice" in out and '"were increased"' in out

    def test_clean_text(self):
        assert lint_text("Repaired forklifts.").diagnostics == []

    def test_strict_exit(self):
        assert main(["lint", "--strict", "--text", "There were many issues."]) == 1
        assert main(["lint", "--strict", "--text", "Repaired forklifts."]) == 0

    def test_counts_match_feature_vector(self, tmp_path, capsys):
        r = record(summary="I am a team player.", jobs=[job(description="Sales were increased a lot. Hey, it was fun!")])
        path = tmp_path / "r.json"
        path.write_text(json.dumps(r))
        assert main(["lint", str(path)]) == 0
        summary = json.loads(capsys.readouterr().out.splitlines()[-1])
        from conftest import make_resume
        f = extract_language_features(make_resume(summary=r["summary"], jobs=r["workExperience"]))
        assert summary["counts"] == {k: f.counts[k] for k in summary["counts"]}
        assert summary["counts"]["passive_voice"] == 1 and summary["counts"]["buzzwords"] == 1

    def test_parse_failure(self, tmp_path, capsys):
        path = tmp_path / "r.json"
        path.write_text("{not json")
        assert main(["lint", str(path)]) == 2
