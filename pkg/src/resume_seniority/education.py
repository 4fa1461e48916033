"""Highest-attainment education category from the most recent education entry."""

from __future__ import annotations

import string
from enum import Enum
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Mapping, Optional

from .resume import Resume


class DegreeLevel(str, Enum):
    HIGH_SCHOOL = "HighSchool"
    ASSOCIATES = "Associates"
    BACHELORS = "Bachelors"
    MASTERS = "Masters"
    DOCTORATE = "Doctorate"
    CERTIFICATE = "Certificate"
    NONE = "None"
    OTHER = "Other"


# Tie-break order when several levels match one string. OTHER never competes.
RANK = {
    DegreeLevel.NONE: 0,
    DegreeLevel.HIGH_SCHOOL: 1,
    DegreeLevel.CERTIFICATE: 2,
    DegreeLevel.ASSOCIATES: 3,
    DegreeLevel.BACHELORS: 4,
    DegreeLevel.MASTERS: 5,
    DegreeLevel.DOCTORATE: 6,
}

DEFAULT_TERMS: Dict[DegreeLevel, FrozenSet[str]] = {
    DegreeLevel.HIGH_SCHOOL: frozenset(["high", "hs", "h.s.", "ged", "g.e.d."]),
    DegreeLevel.ASSOCIATES: frozenset(["aa", "a.a.", "associate", "associates", "assoc", "a.a", "aa."]),
    DegreeLevel.BACHELORS: frozenset(
        ["bachelor", "bachelors", "bachelor's", "ba", "bs", "b.a.", "b.s.", "b.a", "b.s", "bfa", "b.f.a."]
    ),
    DegreeLevel.MASTERS: frozenset(
        ["master", "masters", "ms", "ma", "mfa", "m.s.", "m.a.", "m.f.a.", "msc", "m.a", "ma.", "m.s", "ms.",
         "msc.", "m.b.a", "mba", "mph", "m.p.h.", "mpa", "m.p.a.", "m."]
    ),
    DegreeLevel.DOCTORATE: frozenset(
        ["phd", "phd.", "ph.d", "ph.d.", "doctorate", "doctor", "jd", "j.d.", "md", "m.d.", "d."]
    ),
    DegreeLevel.CERTIFICATE: frozenset(["cert", "certificate", "certification", "vocation", "vocational"]),
}

# Everything except '.' is stripped from token edges; periods are significant in "b.s." vs "b.s".
_EDGE = "".join(c for c in string.punctuation if c != ".") + "‘’“”"


class DegreeTermTable:
    """Immutable level -> term-set mapping with case-insensitive exact-token lookup."""

    def __init__(self, terms: Mapping[DegreeLevel, Iterable[str]]):
        self.terms = {level: frozenset(t.lower() for t in ts) for level, ts in terms.items()}
        self._lookup: Dict[str, set] = {}
        for level, ts in self.terms.items():
            for t in ts:
                self._lookup.setdefault(t, set()).add(level)

    @classmethod
    def default(cls) -> "DegreeTermTable":
        return cls(DEFAULT_TERMS)

    @classmethod
    def from_file(cls, path) -> "DegreeTermTable":
        """Load "level<TAB>term" lines; '#' starts a comment."""
        terms: Dict[DegreeLevel, set] = {}
        for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = line.split("#", 1)[0]
            if not line.strip():
                continue
            try:
                level_name, term = line.split("\t", 1)
                level = DegreeLevel(level_name.strip())
            except ValueError:
                raise ValueError(f"{path}:{n}: expected 'level<TAB>term'") from None
            terms.setdefault(level, set()).add(term.strip())
        return cls(terms)

    def levels_for(self, token: str) -> FrozenSet[DegreeLevel]:
        hits = self._lookup.get(token)
        if hits is None and token.endswith(".") and len(token) > 1:
            # "B.S.," -> "b.s." is already exact; a trailing sentence period on "bs." is not a term
            # unless listed, so also try without it ("MBA." -> "mba").
            hits = self._lookup.get(token.rstrip("."))
        return frozenset(hits or ())


def degree_tokens(text: str):
    for raw in text.split():
        tok = raw.lower().strip(_EDGE)
        # leading periods never belong to a term
        tok = tok.lstrip(".")
        if tok:
            yield tok


_DEFAULT_TABLE: Optional[DegreeTermTable] = None


def default_table() -> DegreeTermTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = DegreeTermTable.default()
    return _DEFAULT_TABLE


def classify_degree_text(degree_text: str, table: Optional[DegreeTermTable] = None) -> DegreeLevel:
    table = table or default_table()
    if not degree_text or not degree_text.strip():
        return DegreeLevel.NONE
    matched = set()
    for tok in degree_tokens(degree_text):
        matched |= table.levels_for(tok)
    if not matched:
        return DegreeLevel.OTHER
    return max(matched, key=RANK.__getitem__)


def most_recent_education(resume: Resume):
    """Entry with the latest start date; undated entries rank below dated ones, later position wins ties."""
    best = None
    best_key = None
    for pos, entry in enumerate(resume.education):
        dated = entry.date_range is not None
        key = (1 if dated else 0, entry.date_range.start.index if dated else 0, pos)
        if best_key is None or key > best_key:
            best, best_key = entry, key
    return best


def classify_resume_education(resume: Resume, table: Optional[DegreeTermTable] = None) -> DegreeLevel:
    entry = most_recent_education(resume)
    if entry is None:
        return DegreeLevel.NONE
    return classify_degree_text(entry.degree, table)
