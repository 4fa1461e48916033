import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resume_seniority.seniority import (
    DEFAULT_SENIOR_TERMS,
    DEFAULT_TAU,
    DistanceUndefined,
    Embedding,
    EmbeddingStore,
    ExactMatch,
    NoEvidence,
    SeniorTermSet,
    TitleClassifier,
    classify_resume_seniority,
    classify_title,
    load_default_embeddings,
    normalize_title,
    relaxed_wmd_lower_bound,
    word_mover_distance,
)
from resume_seniority.synthetic import demo_embeddings

from conftest import DATA, job, make_resume

EMB = load_default_embeddings()
VOCAB = EMB.vocabulary()


def _labeled():
    out = []
    for line in (DATA / "labeled_titles.tsv").read_text().splitlines():
        if line and not line.startswith("#"):
            title, label = line.split("\t")
            out.append((title, label == "1"))
    return out


LABELED = _labeled()


def random_store(rng, words, dim=5):
    return EmbeddingStore(words, rng.standard_normal((len(words), dim)))


@pytest.mark.parametrize("title,tokens", [
    ("Sr. Software Engineer", ["sr", "software", "engineer"]),
    ("VP of Sales", ["vp", "sales"]),
    ("", []),
    ("Head of R&D / Ops", ["head", "r", "d", "ops"]),
])
def test_normalize_title(title, tokens):
    assert normalize_title(title) == tokens


def test_default_terms():
    assert DEFAULT_SENIOR_TERMS == {
        "senior", "chief", "lead", "head", "president", "manager", "director", "supervisor", "superintendent",
        "ceo", "coordinator", "principal", "founder", "partner", "sr", "cfo", "cio"}
    with pytest.raises(ValueError):
        SeniorTermSet([" "])


class TestWMD:
    def test_identical(self):
        assert word_mover_distance(["vp", "sales"], ["sales", "vp"], EMB) == 0.0

    def test_singletons_are_unit_vector_distance(self):
        d = word_mover_distance(["vp"], ["president"], EMB)
        assert d == pytest.approx(np.linalg.norm(EMB.vector("vp") - EMB.vector("president")))
        assert d == pytest.approx(0.18, abs=1e-5)
        assert relaxed_wmd_lower_bound(["vp"], ["president"], EMB) == pytest.approx(d)

    def test_duplicates_collapse(self):
        assert word_mover_distance(["vp", "vp"], ["president"], EMB) == word_mover_distance(["vp"], ["president"], EMB)

    def test_oov_dropped_and_all_oov_undefined(self):
        assert word_mover_distance(["vp", "zzzz"], ["president"], EMB) == word_mover_distance(["vp"], ["president"], EMB)
        with pytest.raises(DistanceUndefined):
            word_mover_distance(["zzzz"], ["president"], EMB)

    def test_two_by_two_enumeration(self):
        # with two uniform tokens per side every vertex is a permutation; compare both
        a, b = ["vp", "sales"], ["president", "manager"]
        c = lambda x, y: np.linalg.norm(EMB.vector(x) - EMB.vector(y))
        brute = min(0.5 * (c(a[0], p[0]) + c(a[1], p[1])) for p in itertools.permutations(b))
        assert word_mover_distance(a, b, EMB) == pytest.approx(brute, abs=1e-12)

    @given(st.lists(st.sampled_from(VOCAB), min_size=1, max_size=3), st.lists(st.sampled_from(VOCAB), min_size=1, max_size=3),
           st.lists(st.sampled_from(VOCAB), min_size=1, max_size=3))
    @settings(max_examples=200, deadline=None)
    def test_metric_properties(self, a, b, c):
        ab = word_mover_distance(a, b, EMB)
        assert ab >= 0
        assert ab == pytest.approx(word_mover_distance(b, a, EMB), abs=1e-12)
        assert (ab < 1e-12) == (set(a) == set(b))
        assert ab <= word_mover_distance(a, c, EMB) + word_mover_distance(c, b, EMB) + 1e-9
        assert relaxed_wmd_lower_bound(a, b, EMB) <= ab + 1e-12

    @given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(1, 3))
    @settings(max_examples=100, deadline=None)
    def test_lower_bound_on_random_embeddings(self, seed, m, n):
        rng = np.random.default_rng(seed)
        words = [f"w{i}" for i in range(6)]
        emb = random_store(rng, words)
        a = list(rng.choice(words, m, replace=False))
        b = list(rng.choice(words, n, replace=False))
        assert relaxed_wmd_lower_bound(a, b, emb) <= word_mover_distance(a, b, emb) + 1e-12


class TestClassifyTitle:
    def test_exact_senior(self):
        c = classify_title("Senior Software Engineer", emb=EMB)
        assert c.is_senior and c.evidence == ExactMatch("senior")

    def test_managing_director(self):
        assert classify_title("managing director", emb=EMB).evidence == ExactMatch("director")

    def test_barista_tau_zero(self):
        c = classify_title("barista", emb=EMB, tau=0)
        assert not c.is_senior and c.evidence == NoEvidence()

    def test_embedding_evidence(self):
        c = classify_title("VP", emb=EMB)
        assert c.is_senior and isinstance(c.evidence, Embedding)
        assert c.evidence.term == "president"
        assert c.evidence.distance == pytest.approx(0.18, abs=1e-5)

    def test_extra_in_vocabulary_words_dilute_the_distance(self):
        # half the mass of "vp sales" must travel from "sales", so the title lands outside tau
        c = classify_title("VP of Sales", emb=EMB)
        assert not c.is_senior and c.evidence.distance > 2 * DEFAULT_TAU

    def test_oov_falls_back(self):
        c = classify_title("Barista", emb=EMB)
        assert not c.is_senior and c.evidence == NoEvidence()

    def test_no_embeddings(self):
        assert classify_title("VP").evidence == NoEvidence()

    def test_negative_tau(self):
        with pytest.raises(ValueError):
            TitleClassifier(tau=-0.1)

    @pytest.mark.parametrize("title,senior", LABELED, ids=[t for t, _ in LABELED])
    def test_labeled_titles_at_default_tau(self, title, senior):
        assert classify_title(title, emb=EMB, tau=DEFAULT_TAU).is_senior is senior

    def test_evidence_consistency(self):
        clf = TitleClassifier(embeddings=EMB)
        for title, _ in LABELED:
            c = clf.classify(title)
            if isinstance(c.evidence, ExactMatch):
                assert c.is_senior
            elif isinstance(c.evidence, Embedding):
                assert c.is_senior == (c.evidence.distance <= DEFAULT_TAU)


@given(st.lists(st.sampled_from(VOCAB + ["barista", "zz"]), max_size=4))
@settings(max_examples=200, deadline=None)
def test_tau_zero_is_membership(tokens):
    c = TitleClassifier(embeddings=EMB, tau=0).classify(" ".join(tokens))
    assert c.is_senior == any(t in DEFAULT_SENIOR_TERMS for t in normalize_title(" ".join(tokens)))


@given(st.lists(st.sampled_from(VOCAB), min_size=1, max_size=3), st.floats(0, 2), st.floats(0, 2))
@settings(max_examples=200, deadline=None)
def test_tau_monotone(tokens, t1, t2):
    lo, hi = sorted((t1, t2))
    title = " ".join(tokens)
    if TitleClassifier(embeddings=EMB, tau=lo).classify(title).is_senior:
        assert TitleClassifier(embeddings=EMB, tau=hi).classify(title).is_senior


def test_prefilter_does_not_change_answer():
    # exhaustive min over terms without the lower-bound skip
    clf = TitleClassifier(embeddings=EMB, tau=2.0)
    for title, _ in LABELED:
        tokens = normalize_title(title)
        if any(t in DEFAULT_SENIOR_TERMS for t in tokens) or not any(t in EMB for t in tokens):
            continue
        ref = min(word_mover_distance(tokens, [t], EMB) for t in DEFAULT_SENIOR_TERMS if t in EMB)
        assert clf.classify(title).evidence.distance == pytest.approx(ref, abs=1e-12)


class TestEmbeddingFile:
    def test_shipped_file_matches_generator(self, tmp_path):
        path = tmp_path / "emb.txt"
        demo_embeddings().write(path)
        shipped = (DATA.parent.parent / "src" / "resume_seniority" / "data" / "title_embeddings.txt").read_text()
        assert path.read_text() == shipped

    def test_round_trip_and_case(self, tmp_path):
        path = tmp_path / "e.txt"
        path.write_text("Alpha 1 0\nbeta 0 2\n")
        emb = EmbeddingStore.from_file(path)
        assert emb.dim == 2 and "ALPHA" in emb
        np.testing.assert_allclose(emb.vector("beta"), [0, 1])

    def test_dimension_mismatch(self, tmp_path):
        path = tmp_path / "e.txt"
        path.write_text("2 2\na 1 0\nb 1\n")
        with pytest.raises(ValueError, match=":3:"):
            EmbeddingStore.from_file(path)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            EmbeddingStore(["a"], np.zeros((1, 3)))


class TestResumeSeniority:
    clf = TitleClassifier(embeddings=EMB)

    def test_ceo_analyst(self):
        r = make_resume(jobs=[job("Analyst", "2008-01", "2012-01"), job("CEO", "2012-02", "present")])
        s = classify_resume_seniority(r, self.clf)
        assert (s.current, s.previous) == (True, False)

    def test_order_from_dates_not_list(self):
        r = make_resume(jobs=[job("CEO", "2012-02", "present"), job("Analyst", "2008-01", "2012-01")])
        s = classify_resume_seniority(r, self.clf)
        assert (s.current, s.previous) == (True, False)

    def test_single_job(self):
        s = classify_resume_seniority(make_resume(jobs=[job("Manager")]), self.clf)
        assert s.current is True and s.previous is None

    def test_no_jobs(self):
        s = classify_resume_seniority(make_resume(), self.clf)
        assert (s.current, s.previous) == (None, None)

    def test_undated_job_not_previous(self):
        r = make_resume(jobs=[job("Clerk", "2010-01", "2012-01"), job("Manager", start=None)])
        s = classify_resume_seniority(r, self.clf)
        assert s.current is False and s.previous is None
