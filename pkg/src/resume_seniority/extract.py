"""Per-resume extraction: every upstream extractor run once, assembled into a regression row."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from .education import DegreeLevel, DegreeTermTable, classify_resume_education, default_table
from .job_history import JobHistoryFeatures, chronological, job_history_features
from .language.features import LanguageFeatureVector, LanguageOptions, extract_language_features
from .language.lexicons import LexiconSet, default_lexicons
from .regression.design import FEATURE_COLUMNS, FeatureRow, education_indicators
from .resume import SNAPSHOT, Resume, YearMonth
from .seniority import ResumeSeniority, TitleClassifier, classify_resume_seniority


@dataclass
class ExtractionContext:
    classifier: TitleClassifier
    lexicons: LexiconSet = field(default_factory=default_lexicons)
    degree_table: DegreeTermTable = field(default_factory=default_table)
    snapshot: YearMonth = SNAPSHOT
    language: LanguageOptions = LanguageOptions()


@dataclass(frozen=True)
class ResumeRecord:
    id: str
    sector: str
    seniority: ResumeSeniority
    education: DegreeLevel
    jobs: JobHistoryFeatures
    dated_jobs: int
    language: LanguageFeatureVector
    capital: Dict[str, int]

    def values(self, previous_seniority: Optional[bool] = None) -> tuple:
        """Feature values in column order; ``previous_seniority`` overrides the classified one."""
        prev = self.seniority.previous if previous_seniority is None else previous_seniority
        return (
            (float(bool(prev)),)
            + (float(self.jobs.num_jobs), float(self.jobs.total_months), float(self.jobs.largest_gap_months))
            + education_indicators(self.education)
            + tuple(float(self.capital[k]) for k in ("num_skills", "num_awards", "num_certifications",
                                                     "num_publications", "num_patents"))
            + tuple(self.language.regressed())
        )

    def row(self) -> Optional[FeatureRow]:
        """Regression row, or None when the previous job's seniority is undefined."""
        s = self.seniority
        if s.previous is None or s.current is None:
            return None
        vals = self.values()
        assert len(vals) == len(FEATURE_COLUMNS)
        return FeatureRow(self.id, self.sector, int(s.current), vals)


def extract_record(resume: Resume, ctx: ExtractionContext) -> ResumeRecord:
    return ResumeRecord(
        id=resume.id,
        sector=resume.sector.value,
        seniority=classify_resume_seniority(resume, ctx.classifier, ctx.snapshot),
        education=classify_resume_education(resume, ctx.degree_table),
        jobs=job_history_features(resume.experience, ctx.snapshot),
        dated_jobs=len(chronological(resume.experience, ctx.snapshot)),
        language=extract_language_features(resume, ctx.lexicons, ctx.language),
        capital={
            "num_skills": len(resume.skills),
            "num_awards": len(resume.awards),
            "num_certifications": len(resume.certifications),
            "num_publications": len(resume.publications),
            "num_patents": len(resume.patents),
        },
    )
