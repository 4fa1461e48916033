import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resume_seniority.resume import (
    SNAPSHOT,
    DateRange,
    EducationEntry,
    JobEntry,
    NamedItem,
    ParseError,
    ParseWarnings,
    Resume,
    SchemaError,
    Sector,
    Skill,
    YearMonth,
    content_hash,
    corpus_stats,
    deduplicate_corpus,
    parse_date_range,
    parse_resume,
    parse_year_month,
    read_corpus,
    serialize_resume,
    write_corpus,
)

from conftest import job, make_resume, record


class TestDates:
    @pytest.mark.parametrize("text,expected", [
        ("2011-06", YearMonth(2011, 6)),
        ("06/2011", YearMonth(2011, 6)),
        ("June 2011", YearMonth(2011, 6)),
        ("jun 2011", YearMonth(2011, 6)),
        ("Sept. 2011", YearMonth(2011, 9)),
    ])
    def test_accepted_shapes(self, text, expected):
        assert parse_year_month(text) == expected

    def test_unrecognised_shape(self):
        assert parse_year_month("summer 2011") is None
        assert parse_year_month("2011") is None

    def test_month_out_of_range(self):
        with pytest.raises(SchemaError):
            parse_year_month("2011-13")
        with pytest.raises(SchemaError):
            parse_year_month("00/2011")

    def test_index_and_order(self):
        assert YearMonth(2011, 1).index == 2011 * 12
        assert YearMonth(2011, 12) < YearMonth(2012, 1)
        assert YearMonth.from_index(YearMonth(1999, 7).index) == YearMonth(1999, 7)

    @pytest.mark.parametrize("word", ["present", "Current", "NOW", "ongoing"])
    def test_ongoing(self, word):
        dr = parse_date_range({"start": "2015-02", "end": word})
        assert dr.ongoing
        assert dr.resolved_end() == SNAPSHOT == YearMonth(2017, 8)
        assert dr.resolved_end(YearMonth(2020, 1)) == YearMonth(2020, 1)


class TestParse:
    def test_empty_education(self):
        r = make_resume(education=[])
        assert r.education == ()

    def test_absent_summary(self):
        assert make_resume().summary is None

    def test_present_end(self):
        r = make_resume(jobs=[job(end="present")])
        assert r.experience[0].date_range.end is None
        assert r.experience[0].date_range.resolved_end() == YearMonth(2017, 8)

    def test_raw_text_preserved(self):
        raw = "  B.S.,  Computer\tScience  "
        r = make_resume(education=[{"degree": raw, "field": " CS ", "dateRange": {"start": "2001-01", "end": "2004-05"}}])
        assert r.education[0].degree == raw
        assert r.education[0].field == " CS "

    def test_malformed_json_reports_line_and_offset(self):
        with pytest.raises(ParseError) as exc:
            parse_resume('{"id": 1, "sector": ', line=7)
        assert exc.value.line == 7
        assert exc.value.offset is not None

    def test_unknown_sector(self):
        with pytest.raises(SchemaError):
            make_resume(sector="Underwater Basket Weaving")

    def test_sector_aliases(self):
        assert make_resume(sector="STEM").sector is Sector.STEM
        assert make_resume(sector="information technology").sector is Sector.IT

    def test_month_out_of_range_is_schema_error(self):
        with pytest.raises(SchemaError):
            make_resume(jobs=[job(start="2010-14")])

    def test_unparseable_date_skips_entry(self):
        w = ParseWarnings()
        r = parse_resume(json.dumps(record(jobs=[job(start="sometime"), job(title="Kept")])), warnings=w)
        assert [j.title for j in r.experience] == ["Kept"]
        assert w.counts["job_invalid_date"] == 1

    def test_end_before_start_skips_entry(self):
        r = make_resume(jobs=[job(start="2012-01", end="2011-01")])
        assert r.experience == ()

    def test_undated_job_kept(self):
        w = ParseWarnings()
        r = parse_resume(json.dumps(record(jobs=[job(start=None)])), warnings=w)
        assert r.experience[0].date_range is None
        assert w.counts["job_undated"] == 1

    def test_experience_order_preserved(self):
        r = make_resume(jobs=[job("B", "2015-01", "2016-01"), job("A", "2010-01", "2011-01")])
        assert [j.title for j in r.experience] == ["B", "A"]


# ---------------------------------------------------------------- round trip

_text = st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=30)
_ym = st.builds(YearMonth, st.integers(1950, 2030), st.integers(1, 12))


@st.composite
def _date_range(draw):
    start = draw(_ym)
    if draw(st.booleans()):
        return DateRange(start, None)
    end = YearMonth.from_index(start.index + draw(st.integers(0, 300)))
    return DateRange(start, end)


_named = st.builds(NamedItem, _text, _text)
resumes = st.builds(
    Resume,
    id=st.text(min_size=1, max_size=10),
    sector=st.sampled_from(list(Sector)),
    summary=st.one_of(st.none(), _text),
    education=st.lists(st.builds(EducationEntry, _text, _text, st.one_of(st.none(), _date_range())), max_size=3).map(tuple),
    experience=st.lists(st.builds(JobEntry, _text, _text, st.one_of(st.none(), _date_range())), max_size=4).map(tuple),
    skills=st.lists(st.builds(Skill, _text, st.one_of(st.none(), st.integers(0, 500))), max_size=4).map(tuple),
    awards=st.lists(_named, max_size=2).map(tuple),
    patents=st.lists(_named, max_size=2).map(tuple),
    certifications=st.lists(_named, max_size=2).map(tuple),
    publications=st.lists(_named, max_size=2).map(tuple),
)


@given(resumes)
@settings(max_examples=200, deadline=None)
def test_round_trip(r):
    assert parse_resume(serialize_resume(r)) == r


@given(st.lists(resumes, max_size=8), st.data())
@settings(max_examples=100, deadline=None)
def test_dedup_idempotent_and_first_wins(rs, data):
    # inject copies that differ only by id
    extra = [Resume(**{**r.__dict__, "id": r.id + "-copy"}) for r in rs[: data.draw(st.integers(0, len(rs)))]]
    stream = rs + extra
    once = list(deduplicate_corpus(stream))
    assert list(deduplicate_corpus(once)) == once
    assert len({content_hash(r) for r in once}) == len(once)
    # survivors keep input order and each is the first of its class
    first = {}
    for i, r in enumerate(stream):
        first.setdefault(content_hash(r), i)
    assert [stream.index(r) for r in once] == sorted(first.values())


class TestDedup:
    def test_identical_except_id(self):
        a = make_resume(id="a", jobs=[job()])
        b = make_resume(id="b", jobs=[job()])
        assert [r.id for r in deduplicate_corpus([a, b])] == ["a"]

    def test_one_character_difference(self):
        a = make_resume(id="a", jobs=[job(description="Ran the till.")])
        b = make_resume(id="b", jobs=[job(description="Ran the till!")])
        assert len(list(deduplicate_corpus([a, b]))) == 2

    def test_empty(self):
        assert list(deduplicate_corpus([])) == []


class TestCorpusIO:
    def test_read_write(self, tmp_path):
        rs = [make_resume(id=str(i), jobs=[job(title=f"T{i}")]) for i in range(3)]
        path = tmp_path / "c.ndjson"
        assert write_corpus(rs, path) == 3
        assert read_corpus(path).resumes == rs

    def test_lenient_read_collects_errors(self, tmp_path):
        path = tmp_path / "c.ndjson"
        path.write_text(json.dumps(record(id="ok")) + "\n{bad json\n" + json.dumps(record(sector="Nope")) + "\n")
        res = read_corpus(path, strict=False)
        assert [r.id for r in res.resumes] == ["ok"]
        assert len(res.errors) == 2
        assert res.errors[0].line == 2
        with pytest.raises(ParseError):
            read_corpus(path, strict=True)


class TestStats:
    def test_single_sector(self):
        rs = [make_resume(id=str(i)) for i in range(3)]
        rep = corpus_stats(rs)
        assert rep.sectors == [("Finance", 3)]
        assert rep.total == 3

    def test_skill_counts(self):
        rs = [make_resume(id="1", skills=[{"name": "java"}, {"name": "sql"}]), make_resume(id="2", skills=[{"name": "Java"}])]
        assert corpus_stats(rs).skills == [("java", 2), ("sql", 1)]

    def test_ties_sorted_lexicographically(self):
        rs = [make_resume(id="1", skills=[{"name": "b"}, {"name": "a"}])]
        assert corpus_stats(rs).skills == [("a", 1), ("b", 1)]

    def test_least_prevalent_sector(self):
        counts = {s: 3 + i for i, s in enumerate(Sector)}
        rs = [make_resume(id=f"{s.name}{k}", sector=s.value) for s, n in counts.items() for k in range(n)]
        rep = corpus_stats(rs)
        assert rep.least_prevalent_sector == min(counts, key=counts.get).value
        assert sum(n for _, n in rep.sectors) == rep.total == len(rs)

    def test_total_equals_deduplicated_cardinality(self):
        rs = [make_resume(id="a"), make_resume(id="b"), make_resume(id="c", summary="x")]
        unique = list(deduplicate_corpus(rs))
        assert corpus_stats(unique).total == len(unique) == 2

    def test_experience_buckets(self):
        r = make_resume(jobs=[job(start="2000-01", end="2003-06"), job(start="1990-01", end="2016-01")])
        assert dict(corpus_stats([r]).experience_years) == {"03": 1, "20+": 1}
