import json

import numpy as np
import pytest

from resume_seniority.regression.design import FEATURE_COLUMNS
from resume_seniority.resume import Sector, read_corpus
from resume_seniority.seniority import TitleClassifier, classify_resume_seniority
from resume_seniority.synthetic import (
    DEFAULT_PLANTED,
    NEAR_TERMS,
    NON_SENIOR_TITLES,
    SENIOR_TITLES,
    InfeasibleSpec,
    SyntheticSpec,
    demo_embeddings,
    generate,
    solve_intercept,
    write_synthetic,
)

EMB = demo_embeddings()


def test_size_zero_gives_empty_file(tmp_path):
    corpus = generate(SyntheticSpec(size=0))
    path = tmp_path / "c.ndjson"
    write_synthetic(corpus, path)
    assert path.read_bytes() == b""
    assert json.loads((tmp_path / "c.ndjson.truth.json").read_text())["labels"] == {}


def test_same_seed_byte_identical(tmp_path):
    for name in ("a", "b"):
        write_synthetic(generate(SyntheticSpec(size=150, seed=3)), tmp_path / f"{name}.ndjson")
    assert (tmp_path / "a.ndjson").read_bytes() == (tmp_path / "b.ndjson").read_bytes()
    assert (tmp_path / "a.ndjson.truth.json").read_bytes() == (tmp_path / "b.ndjson.truth.json").read_bytes()
    write_synthetic(generate(SyntheticSpec(size=150, seed=4)), tmp_path / "c.ndjson")
    assert (tmp_path / "a.ndjson").read_bytes() != (tmp_path / "c.ndjson").read_bytes()


@pytest.mark.slow
def test_base_rate_at_ten_thousand():
    corpus = generate(SyntheticSpec(size=10_000, seed=11))
    assert abs(corpus.realized_rate - 0.24) <= 0.02


def test_labels_agree_with_pipeline_classification(tmp_path):
    corpus = generate(SyntheticSpec(size=200, seed=5))
    path = tmp_path / "c.ndjson"
    write_synthetic(corpus, path)
    clf = TitleClassifier(embeddings=EMB)
    resumes = read_corpus(path).resumes
    assert [int(classify_resume_seniority(r, clf).current) for r in resumes] == corpus.labels


def test_sector_weights():
    corpus = generate(SyntheticSpec(size=60, seed=1, sector_weights={"Finance": 1, "STEM": 0}))
    assert {r.sector for r in corpus.resumes} == {Sector.FINANCE}


@pytest.mark.parametrize("kwargs", [
    {"base_rate": 0.0},
    {"base_rate": 1.0},
    {"size": -1},
    {"coefficients": {"not_a_column": 1.0}},
    {"buzzword_rate": 0.5, "hedge_rate": 0.5},
    {"sector_weights": {"Finance": -1.0}},
])
def test_invalid_specs(kwargs):
    with pytest.raises(InfeasibleSpec):
        generate(SyntheticSpec(**{"size": 10, **kwargs}))


def test_unreachable_base_rate():
    # a score this large pins every probability near 0 or 1 within the intercept bound
    with pytest.raises(InfeasibleSpec, match="unreachable"):
        solve_intercept(np.array([100.0, 100.0, -100.0]), 0.01)


def test_solve_intercept():
    scores = np.random.default_rng(0).standard_normal(500)
    b = solve_intercept(scores, 0.3)
    assert np.mean(1 / (1 + np.exp(-(b + scores)))) == pytest.approx(0.3, abs=1e-12)


def test_spec_round_trip():
    spec = SyntheticSpec(size=5, seed=2, sector_weights={"Finance": 2.0})
    assert SyntheticSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(InfeasibleSpec):
        SyntheticSpec.from_dict({"size": 1, "colour": "red"})


def test_planted_defaults():
    assert set(DEFAULT_PLANTED) <= set(FEATURE_COLUMNS)
    for c in ("num_skills", "num_awards", "num_certifications", "num_publications", "num_patents"):
        assert DEFAULT_PLANTED.get(c, 0.0) == 0.0


def test_title_banks_classify_as_labelled():
    clf = TitleClassifier(embeddings=EMB)
    assert all(clf.classify(t).is_senior for t in SENIOR_TITLES)
    assert not any(clf.classify(t).is_senior for t in NON_SENIOR_TITLES)


def test_near_terms_placed_at_stated_distance():
    # vectors are rounded to six decimals before renormalizing
    for word, (anchor, dist) in NEAR_TERMS.items():
        assert np.linalg.norm(EMB.vector(word) - EMB.vector(anchor)) == pytest.approx(dist, abs=1e-5)
