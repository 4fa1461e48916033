"""Resume records: schema, parsing from the NDJSON corpus format, dedup and corpus statistics."""

from __future__ import annotations

import calendar
import hashlib
import json
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

logger = logging.getLogger(__name__)


class ResumeError(ValueError):
    """Base class for corpus-format problems."""


class ParseError(ResumeError):
    def __init__(self, message: str, line: Optional[int] = None, offset: Optional[int] = None):
        self.line = line
        self.offset = offset
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class SchemaError(ResumeError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# ---------------------------------------------------------------- dates


@dataclass(frozen=True, order=True)
class YearMonth:
    year: int
    month: int

    def __post_init__(self):
        if not 1 <= self.month <= 12:
            raise SchemaError(f"month out of range: {self.month}")

    @property
    def index(self) -> int:
        return self.year * 12 + (self.month - 1)

    @classmethod
    def from_index(cls, index: int) -> "YearMonth":
        return cls(index // 12, index % 12 + 1)

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


SNAPSHOT = YearMonth(2017, 8)

_MONTH_NAMES = {name.lower(): i for i, name in enumerate(calendar.month_name) if name}
_MONTH_NAMES.update({name.lower(): i for i, name in enumerate(calendar.month_abbr) if name})
_MONTH_NAMES["sept"] = 9

_ISO_RE = re.compile(r"^(\d{4})-(\d{1,2})$")
_US_RE = re.compile(r"^(\d{1,2})/(\d{4})$")
_NAMED_RE = re.compile(r"^([A-Za-z]+)\.?\s+(\d{4})$")
ONGOING_WORDS = frozenset({"present", "current", "now", "ongoing"})


def parse_year_month(text: str) -> Optional[YearMonth]:
    """Parse "YYYY-MM", "MM/YYYY" or "MonthName YYYY".

    Returns None for strings in none of those shapes. A recognised shape
    with an impossible month raises SchemaError.
    """
    s = text.strip()
    m = _ISO_RE.match(s)
    if m:
        return YearMonth(int(m.group(1)), int(m.group(2)))
    m = _US_RE.match(s)
    if m:
        return YearMonth(int(m.group(2)), int(m.group(1)))
    m = _NAMED_RE.match(s)
    if m and m.group(1).lower() in _MONTH_NAMES:
        return YearMonth(int(m.group(2)), _MONTH_NAMES[m.group(1).lower()])
    return None


@dataclass(frozen=True)
class DateRange:
    start: YearMonth
    end: Optional[YearMonth] = None  # None means ongoing

    @property
    def ongoing(self) -> bool:
        return self.end is None

    def resolved_end(self, snapshot: YearMonth = SNAPSHOT) -> YearMonth:
        return snapshot if self.end is None else self.end

    def to_json(self) -> Dict[str, str]:
        return {"start": str(self.start), "end": "present" if self.end is None else str(self.end)}


class InvalidDate(Exception):
    """Unparseable or inconsistent date range; the owning entry is skipped."""


def parse_date_range(obj: Any) -> Optional[DateRange]:
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise InvalidDate(f"dateRange must be an object, got {type(obj).__name__}")
    start_raw, end_raw = obj.get("start"), obj.get("end")
    if not isinstance(start_raw, str):
        raise InvalidDate("dateRange.start missing")
    start = parse_year_month(start_raw)
    if start is None:
        raise InvalidDate(f"unparseable start date {start_raw!r}")
    if end_raw is None or (isinstance(end_raw, str) and end_raw.strip().lower() in ONGOING_WORDS):
        return DateRange(start, None)
    if not isinstance(end_raw, str):
        raise InvalidDate("dateRange.end must be a string")
    end = parse_year_month(end_raw)
    if end is None:
        raise InvalidDate(f"unparseable end date {end_raw!r}")
    if end < start:
        raise InvalidDate(f"end {end} precedes start {start}")
    return DateRange(start, end)


# ---------------------------------------------------------------- sectors


class Sector(str, Enum):
    AGRICULTURE = "Agriculture Food Natural Resources"
    ARCHITECTURE = "Architecture Construction"
    ARTS = "Arts Audio Video Technology Communications"
    BUSINESS = "Business Management Administration"
    EDUCATION = "Education Training"
    FINANCE = "Finance"
    GOVERNMENT = "Government Public Administration"
    HEALTH = "Health Science"
    HOSPITALITY = "Hospitality Tourism"
    HUMAN_SERVICES = "Human Services"
    IT = "Information Technology"
    LAW = "Law Public Safety Corrections Security"
    MANUFACTURING = "Manufacturing"
    MARKETING = "Marketing"
    STEM = "Science Technology Engineering Mathematics"
    TRANSPORTATION = "Transportation Distribution Logistics"

    @property
    def slug(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "Sector":
        key = _sector_key(text)
        try:
            return _SECTOR_LOOKUP[key]
        except KeyError:
            raise SchemaError(f"unknown sector {text!r}") from None


def _sector_key(text: str) -> str:
    return " ".join(re.sub(r"[^a-z]+", " ", text.lower()).split())


_SECTOR_ALIASES = {
    Sector.AGRICULTURE: ["Food & Agriculture", "Agriculture"],
    Sector.ARCHITECTURE: ["Architecture"],
    Sector.ARTS: ["Arts & Communication", "Arts"],
    Sector.BUSINESS: ["Business"],
    Sector.EDUCATION: ["Education"],
    Sector.GOVERNMENT: ["Government"],
    Sector.HEALTH: [],
    Sector.HOSPITALITY: ["Tourism", "Hospitality"],
    Sector.IT: ["IT"],
    Sector.LAW: ["Public Safety", "Law"],
    Sector.STEM: ["STEM"],
    Sector.TRANSPORTATION: ["Transportation"],
}

_SECTOR_LOOKUP: Dict[str, Sector] = {}
for _s in Sector:
    _SECTOR_LOOKUP[_sector_key(_s.value)] = _s
    _SECTOR_LOOKUP[_sector_key(_s.name)] = _s
    for _alias in _SECTOR_ALIASES.get(_s, []):
        _SECTOR_LOOKUP[_sector_key(_alias)] = _s


# ---------------------------------------------------------------- records


@dataclass(frozen=True)
class EducationEntry:
    degree: str = ""
    field: str = ""
    date_range: Optional[DateRange] = None


@dataclass(frozen=True)
class JobEntry:
    title: str = ""
    description: str = ""
    date_range: Optional[DateRange] = None


@dataclass(frozen=True)
class Skill:
    name: str
    months: Optional[int] = None


@dataclass(frozen=True)
class NamedItem:
    name: str = ""
    description: str = ""


@dataclass(frozen=True)
class Resume:
    id: str
    sector: Sector
    summary: Optional[str] = None
    education: Tuple[EducationEntry, ...] = ()
    experience: Tuple[JobEntry, ...] = ()
    skills: Tuple[Skill, ...] = ()
    awards: Tuple[NamedItem, ...] = ()
    patents: Tuple[NamedItem, ...] = ()
    certifications: Tuple[NamedItem, ...] = ()
    publications: Tuple[NamedItem, ...] = ()


@dataclass
class ParseWarnings:
    """Data-quality counters accumulated while parsing."""

    counts: Counter = field(default_factory=Counter)

    def add(self, kind: str, n: int = 1) -> None:
        self.counts[kind] += n


def _text(obj: Any, key: str, line: Optional[int]) -> str:
    value = obj.get(key, "")
    if value is None:
        return ""
    if not isinstance(value, str):
        raise SchemaError(f"field {key!r} must be a string", line)
    return value


def _list(obj: Dict[str, Any], key: str, line: Optional[int]) -> List[Any]:
    value = obj.get(key)
    if value is None:
        return []
    if not isinstance(value, list):
        raise SchemaError(f"field {key!r} must be a list", line)
    return value


def _object(item: Any, key: str, line: Optional[int]) -> Dict[str, Any]:
    if not isinstance(item, dict):
        raise SchemaError(f"entries of {key!r} must be objects", line)
    return item


def parse_resume(
    record: Any,
    line: Optional[int] = None,
    warnings: Optional[ParseWarnings] = None,
) -> Resume:
    """Build a Resume from one corpus record (a JSON text line or an already-decoded dict).

    Entries whose dateRange cannot be parsed are dropped and counted in
    ``warnings``; a month outside 1..12 is a SchemaError for the whole record.
    """
    if isinstance(record, (str, bytes)):
        try:
            obj = json.loads(record)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=line if line is not None else exc.lineno, offset=exc.pos) from None
    else:
        obj = record
    if not isinstance(obj, dict):
        raise ParseError("record is not a JSON object", line=line)
    warnings = warnings if warnings is not None else ParseWarnings()

    rid = obj.get("id")
    if rid is None or isinstance(rid, (dict, list)):
        raise SchemaError("missing id", line)
    sector_raw = obj.get("sector")
    if not isinstance(sector_raw, str):
        raise SchemaError("missing sector", line)
    try:
        sector = Sector.parse(sector_raw)
    except SchemaError as exc:
        raise SchemaError(str(exc), line) from None

    summary = obj.get("summary")
    if summary is not None and not isinstance(summary, str):
        raise SchemaError("summary must be a string", line)

    def dated(item: Dict[str, Any], kind: str) -> Tuple[bool, Optional[DateRange]]:
        try:
            return True, parse_date_range(item.get("dateRange"))
        except InvalidDate as exc:
            warnings.add(f"{kind}_invalid_date")
            logger.debug("line %s: skipping %s entry: %s", line, kind, exc)
            return False, None
        except SchemaError as exc:
            raise SchemaError(str(exc), line) from None

    education = []
    for item in _list(obj, "education", line):
        item = _object(item, "education", line)
        ok, dr = dated(item, "education")
        if ok:
            education.append(EducationEntry(_text(item, "degree", line), _text(item, "field", line), dr))

    experience = []
    for item in _list(obj, "workExperience", line):
        item = _object(item, "workExperience", line)
        ok, dr = dated(item, "job")
        if ok:
            if dr is None:
                warnings.add("job_undated")
            experience.append(JobEntry(_text(item, "title", line), _text(item, "description", line), dr))

    skills = []
    for item in _list(obj, "skills", line):
        item = _object(item, "skills", line)
        months = item.get("months")
        if months is not None and (isinstance(months, bool) or not isinstance(months, (int, float))):
            raise SchemaError("skill months must be numeric", line)
        skills.append(Skill(_text(item, "name", line), None if months is None else int(months)))

    def named(key: str) -> Tuple[NamedItem, ...]:
        out = []
        for item in _list(obj, key, line):
            item = _object(item, key, line)
            out.append(NamedItem(_text(item, "name", line), _text(item, "description", line)))
        return tuple(out)

    return Resume(
        id=str(rid),
        sector=sector,
        summary=summary,
        education=tuple(education),
        experience=tuple(experience),
        skills=tuple(skills),
        awards=named("awards"),
        patents=named("patents"),
        certifications=named("certifications"),
        publications=named("publications"),
    )


def resume_to_dict(r: Resume) -> Dict[str, Any]:
    def dr(d: Optional[DateRange]) -> Optional[Dict[str, str]]:
        return None if d is None else d.to_json()

    def named(items: Iterable[NamedItem]) -> List[Dict[str, str]]:
        return [{"name": i.name, "description": i.description} for i in items]

    out: Dict[str, Any] = {"id": r.id, "sector": r.sector.value}
    if r.summary is not None:
        out["summary"] = r.summary
    out["education"] = []
    for e in r.education:
        entry: Dict[str, Any] = {"degree": e.degree, "field": e.field}
        if e.date_range is not None:
            entry["dateRange"] = dr(e.date_range)
        out["education"].append(entry)
    out["workExperience"] = []
    for j in r.experience:
        entry = {"title": j.title, "description": j.description}
        if j.date_range is not None:
            entry["dateRange"] = dr(j.date_range)
        out["workExperience"].append(entry)
    out["skills"] = [
        {"name": s.name} if s.months is None else {"name": s.name, "months": s.months} for s in r.skills
    ]
    out["awards"] = named(r.awards)
    out["patents"] = named(r.patents)
    out["certifications"] = named(r.certifications)
    out["publications"] = named(r.publications)
    return out


def serialize_resume(r: Resume) -> str:
    return json.dumps(resume_to_dict(r), ensure_ascii=False, separators=(",", ":"))


def content_hash(r: Resume) -> str:
    d = resume_to_dict(r)
    del d["id"]
    canon = json.dumps(d, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def deduplicate_corpus(resumes: Iterable[Resume]) -> Iterator[Resume]:
    """Yield the first resume of each content-identical class (id ignored), in input order."""
    seen = set()
    for r in resumes:
        h = content_hash(r)
        if h in seen:
            continue
        seen.add(h)
        yield r


@dataclass
class CorpusReadResult:
    resumes: List[Resume]
    warnings: ParseWarnings
    errors: List[ResumeError]
    lines: int


def iter_corpus_lines(path) -> Iterator[Tuple[int, str]]:
    with open(path, "r", encoding="utf-8") as fh:
        for i, raw in enumerate(fh, start=1):
            if raw.strip():
                yield i, raw


def read_corpus(path, strict: bool = True) -> CorpusReadResult:
    """Read an NDJSON corpus. With ``strict`` the first bad record raises; otherwise errors are collected."""
    warnings = ParseWarnings()
    resumes: List[Resume] = []
    errors: List[ResumeError] = []
    n = 0
    for line_no, raw in iter_corpus_lines(path):
        n += 1
        try:
            resumes.append(parse_resume(raw, line=line_no, warnings=warnings))
        except ResumeError as exc:
            if strict:
                raise
            errors.append(exc)
    return CorpusReadResult(resumes, warnings, errors, n)


def write_corpus(resumes: Iterable[Resume], path) -> int:
    n = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in resumes:
            fh.write(serialize_resume(r))
            fh.write("\n")
            n += 1
    return n


# ---------------------------------------------------------------- stats


def _ranked(counter: Counter, top_k: Optional[int] = None) -> List[Tuple[str, int]]:
    items = sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
    return items if top_k is None else items[:top_k]


@dataclass
class StatsReport:
    total: int
    sectors: List[Tuple[str, int]]
    skills: List[Tuple[str, int]]
    fields: List[Tuple[str, int]]
    degrees: List[Tuple[str, int]]
    experience_years: List[Tuple[str, int]]
    least_prevalent_sector: Optional[str]

    def tables(self) -> Dict[str, List[Tuple[str, int]]]:
        return {
            "sectors": self.sectors,
            "skills": self.skills,
            "fields_of_study": self.fields,
            "degrees": self.degrees,
            "experience_range": self.experience_years,
        }


def _duration_bucket(years: int, cap: int = 20) -> str:
    return f"{cap}+" if years >= cap else f"{years:02d}"


def corpus_stats(resumes: Iterable[Resume], top_k: int = 20, snapshot: YearMonth = SNAPSHOT) -> StatsReport:
    """Histograms behind the corpus overview figures.

    Skill and field-of-study names are counted after whitespace/case
    folding. Job durations are bucketed in whole years.
    """
    from .education import classify_resume_education

    sectors: Counter = Counter()
    skills: Counter = Counter()
    fields: Counter = Counter()
    degrees: Counter = Counter()
    durations: Counter = Counter()
    total = 0
    for r in resumes:
        total += 1
        sectors[r.sector.value] += 1
        for s in r.skills:
            name = " ".join(s.name.lower().split())
            if name:
                skills[name] += 1
        for e in r.education:
            f = " ".join(e.field.lower().split())
            if f:
                fields[f] += 1
        degrees[classify_resume_education(r).value] += 1
        for j in r.experience:
            if j.date_range is None:
                continue
            months = j.date_range.resolved_end(snapshot).index - j.date_range.start.index
            if months >= 0:
                durations[_duration_bucket(months // 12)] += 1
    ranked_sectors = _ranked(sectors)
    least = None
    if ranked_sectors:
        least = min(ranked_sectors, key=lambda kv: (kv[1], kv[0]))[0]
    return StatsReport(
        total=total,
        sectors=ranked_sectors,
        skills=_ranked(skills, top_k),
        fields=_ranked(fields, top_k),
        degrees=_ranked(degrees),
        experience_years=_ranked(durations),
        least_prevalent_sector=least,
    )
