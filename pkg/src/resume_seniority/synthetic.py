"""Synthetic resume corpora with labels drawn from a planted logistic model.

Generation runs in two passes. Pass one draws every resume skeleton (jobs, dates,
education, text) and measures its features with the same extractors the pipeline
uses. Pass two standardizes those features per sector, solves for the intercept
that hits the target senior rate, draws the labels, and only then writes each
resume's current job title to match its label.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .extract import ExtractionContext, extract_record
from .regression.design import BINARY_COLUMNS, FEATURE_COLUMNS
from .resume import (
    SNAPSHOT,
    DateRange,
    EducationEntry,
    JobEntry,
    NamedItem,
    Resume,
    Sector,
    Skill,
    YearMonth,
    serialize_resume,
)
from .seniority import DEFAULT_SENIOR_TERMS, DEFAULT_TAU, EmbeddingStore, TitleClassifier

logger = logging.getLogger(__name__)


class InfeasibleSpec(ValueError):
    pass


# Standardized units for continuous columns, raw units for the 0/1 columns.
DEFAULT_PLANTED: Dict[str, float] = {
    "previous_seniority": 1.0,
    "total_months": 1.2,
    "largest_gap_months": -0.6,
    "buzzwords": 0.6,
}

INTERCEPT_BOUND = 30.0


@dataclass(frozen=True)
class SyntheticSpec:
    size: int = 10_000
    seed: int = 0
    base_rate: float = 0.24
    sector_weights: Optional[Dict[str, float]] = None  # None -> uniform over all sectors
    coefficients: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_PLANTED))
    previous_senior_rate: float = 0.2
    buzzword_rate: float = 0.15  # mean share of sentences carrying each construct
    hedge_rate: float = 0.1
    passive_rate: float = 0.1
    misc_rate: float = 0.1
    single_job_rate: float = 0.03

    def validate(self) -> None:
        if self.size < 0:
            raise InfeasibleSpec("size must be >= 0")
        if not 0.0 < self.base_rate < 1.0:
            raise InfeasibleSpec(f"base rate {self.base_rate} outside (0, 1)")
        unknown = set(self.coefficients) - set(FEATURE_COLUMNS)
        if unknown:
            raise InfeasibleSpec(f"unknown planted columns: {sorted(unknown)}")
        for name in ("previous_senior_rate", "buzzword_rate", "hedge_rate", "passive_rate", "misc_rate",
                     "single_job_rate"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise InfeasibleSpec(f"{name}={v} outside [0, 1)")
        if self.buzzword_rate + self.hedge_rate + self.passive_rate + self.misc_rate >= 1.0:
            raise InfeasibleSpec("sentence construct rates must sum below 1")
        weights = self.weights()
        if any(w < 0 for w in weights.values()) or sum(weights.values()) <= 0:
            raise InfeasibleSpec("sector weights must be non-negative with a positive total")

    def weights(self) -> Dict[str, float]:
        if self.sector_weights is None:
            return {s.value: 1.0 for s in Sector}
        return {Sector.parse(k).value: float(v) for k, v in self.sector_weights.items()}

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Dict[str, object]) -> "SyntheticSpec":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise InfeasibleSpec(f"unknown spec fields: {sorted(extra)}")
        return cls(**d)


# ---------------------------------------------------------------- title banks

SENIOR_TITLES = (
    "Senior Software Engineer", "Operations Manager", "Director of Sales", "Shift Supervisor", "Project Lead",
    "Vice President", "Chief Financial Officer", "Head of Marketing", "Store Manager", "Principal Engineer",
    "Program Coordinator", "Managing Partner", "Co-Founder", "Construction Superintendent", "Sr. Analyst",
    "CEO", "CFO", "CIO",
    # no senior term; accepted through the embedding stage
    "VP", "Executive", "Foreman", "Owner", "Dean",
)
NON_SENIOR_TITLES = (
    "Software Engineer", "Cashier", "Sales Associate", "Registered Nurse", "Teacher", "Truck Driver",
    "Data Analyst", "Technician", "Administrative Assistant", "Clerk", "Intern", "Accountant", "Mechanic",
    "Server", "Customer Service Representative", "Electrician", "Bookkeeper", "Paralegal", "Receptionist",
    "Welder", "Line Cook", "Graphic Designer", "Research Assistant", "Deputy", "Associate", "Assistant",
)

# word -> (anchor term, exact Euclidean distance between their unit vectors)
NEAR_TERMS: Dict[str, Tuple[str, float]] = {
    "vp": ("president", 0.18),
    "executive": ("chief", 0.22),
    "foreman": ("supervisor", 0.20),
    "owner": ("founder", 0.25),
    "dean": ("head", 0.28),
    # close but outside the default threshold
    "deputy": ("director", 0.45),
    "assistant": ("manager", 0.55),
    "associate": ("partner", 0.60),
}
EMBEDDING_DIM = 32
EMBEDDING_SEED = 20170801


def demo_vocabulary() -> List[str]:
    from .seniority import normalize_title

    words = set(DEFAULT_SENIOR_TERMS) | set(NEAR_TERMS)
    for t in SENIOR_TITLES + NON_SENIOR_TITLES:
        words.update(normalize_title(t))
    return sorted(words)


def demo_embeddings(dim: int = EMBEDDING_DIM, seed: int = EMBEDDING_SEED) -> EmbeddingStore:
    """Small title embedding: random unit vectors, with a few words placed at fixed distances from senior terms."""
    words = demo_vocabulary()
    rng = np.random.default_rng(seed)
    vecs = rng.standard_normal((len(words), dim))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    index = {w: i for i, w in enumerate(words)}
    for word, (anchor, dist) in sorted(NEAR_TERMS.items()):
        a = vecs[index[anchor]]
        u = vecs[index[word]] - (vecs[index[word]] @ a) * a
        u /= np.linalg.norm(u)
        theta = 2.0 * math.asin(dist / 2.0)  # chord length -> angle
        vecs[index[word]] = math.cos(theta) * a + math.sin(theta) * u
    # round-trip through the on-disk precision so the shipped file and this function agree
    vecs = np.round(vecs, 6)
    return EmbeddingStore(words, vecs)


# ---------------------------------------------------------------- text banks

_VERBS = ("Managed", "Developed", "Coordinated", "Prepared", "Maintained", "Tracked", "Organized", "Handled",
          "Reviewed", "Supported", "Built", "Scheduled", "Processed", "Delivered", "Trained")
_OBJECTS = ("inventory records", "client accounts", "weekly schedules", "the onboarding process",
            "purchase orders", "monthly reports", "customer requests", "equipment repairs", "safety audits",
            "vendor contracts", "budget forecasts", "shipping logistics", "training materials",
            "patient records", "quality checks", "the product catalog")
_GROUPS = ("regional office", "sales department", "operations team", "warehouse staff", "finance group",
           "support desk", "field crew", "marketing team", "nursing unit", "design studio")
_PARTICIPLES = ("reviewed", "updated", "processed", "improved", "completed", "handled", "prepared", "tracked")
_HEDGES = ("Often", "Generally", "Mostly", "Mainly", "Largely", "Probably", "Roughly", "Frequently")
_BUZZ_NOUNS = ("team player", "self-starter", "go-getter", "thought leader", "hard worker")
_BUZZ_ADJS = ("results-driven", "detail-oriented", "proactive", "dynamic", "passionate", "highly motivated")
_FIELDS = ("Business", "Nursing", "Computer Science", "Accounting", "Education", "Engineering", "Biology",
           "Marketing", "Psychology", "Criminal Justice", "Culinary Arts", "Welding")
_SKILLS = ("Microsoft Excel", "Customer Service", "Sales", "Python", "Project Management", "Forklift",
           "QuickBooks", "Scheduling", "Inventory", "Bookkeeping", "SQL", "Patient Care", "Payroll",
           "Spanish", "AutoCAD", "Social Media", "Data Entry", "Welding", "Teaching", "Budgeting")

DEGREE_BANK = {
    "HighSchool": ("High School Diploma", "GED"),
    "Associates": ("Associate of Arts", "AA"),
    "Bachelors": ("Bachelor of Science", "BA", "B.S."),
    "Masters": ("Master of Science", "MBA", "M.A."),
    "Doctorate": ("PhD", "Doctor of Philosophy"),
    "Certificate": ("Certificate", "Vocational Program"),
    "Other": ("Coursework", "Some College"),
    "None": ("",),
}
DEGREE_WEIGHTS = {"HighSchool": 0.25, "Associates": 0.12, "Bachelors": 0.3, "Masters": 0.1, "Doctorate": 0.02,
                  "Certificate": 0.06, "Other": 0.07, "None": 0.08}


def _pick(rng: np.random.Generator, bank: Sequence[str]) -> str:
    return bank[int(rng.integers(len(bank)))]


def _neutral(rng) -> str:
    return f"{_pick(rng, _VERBS)} {_pick(rng, _OBJECTS)} for the {_pick(rng, _GROUPS)}."


def _buzz(rng) -> str:
    k = int(rng.integers(3))
    if k == 0:
        return f"Known as a {_pick(rng, _BUZZ_NOUNS)} in the {_pick(rng, _GROUPS)}."
    if k == 1:
        return f"Brought a {_pick(rng, _BUZZ_ADJS)} approach to {_pick(rng, _OBJECTS)}."
    return f"Applied best practices to {_pick(rng, _OBJECTS)} for the {_pick(rng, _GROUPS)}."


def _hedge(rng) -> str:
    return f"{_pick(rng, _HEDGES)} {_pick(rng, _VERBS).lower()} {_pick(rng, _OBJECTS)} for the {_pick(rng, _GROUPS)}."


def _passive(rng) -> str:
    obj = _pick(rng, _OBJECTS)
    obj = obj[0].upper() + obj[1:]
    return f"{obj} were {_pick(rng, _PARTICIPLES)} by the {_pick(rng, _GROUPS)}."


def _misc(rng) -> str:
    k = int(rng.integers(5))
    if k == 0:
        return f"I {_pick(rng, _VERBS).lower()} {_pick(rng, _OBJECTS)}."
    if k == 1:
        return f"There were {int(rng.integers(3, 80))} people on the {_pick(rng, _GROUPS)}."
    if k == 2:
        return f"Handled several {_pick(rng, _OBJECTS)} for the {_pick(rng, _GROUPS)}."
    if k == 3:
        return f"{_pick(rng, _VERBS)} {_pick(rng, _OBJECTS)} as well as {_pick(rng, _OBJECTS)}."
    return f"Was responsible for {_pick(rng, _OBJECTS)} and {_pick(rng, _OBJECTS)}."


def _paragraph(rng, n: int, rates: np.ndarray) -> str:
    makers = (_buzz, _hedge, _passive, _misc, _neutral)
    probs = np.append(rates, 1.0 - rates.sum())
    return " ".join(makers[int(rng.choice(5, p=probs))](rng) for _ in range(n))


def _propensity(rng, mean: float, concentration: float = 4.0) -> float:
    if mean <= 0:
        return 0.0
    return float(rng.beta(mean * concentration, (1 - mean) * concentration))


# ---------------------------------------------------------------- skeletons

@dataclass
class _Skeleton:
    resume: Resume
    current_index: Optional[int]  # job whose title carries the label
    previous_senior: Optional[bool]


def _timeline(rng, n_jobs: int, snapshot: YearMonth) -> List[DateRange]:
    """Dated ranges, most recent first, built backwards from the snapshot."""
    ranges = []
    end_idx = snapshot.index - (0 if rng.random() < 0.55 else int(rng.geometric(1 / 6)))
    ongoing = end_idx == snapshot.index
    for k in range(n_jobs):
        months = int(np.clip(round(rng.lognormal(math.log(28), 0.8)), 1, 240))
        start_idx = end_idx - months
        end = None if (k == 0 and ongoing) else YearMonth.from_index(end_idx)
        ranges.append(DateRange(YearMonth.from_index(start_idx), end))
        gap = 0 if rng.random() < 0.55 else 1 + int(rng.exponential(9))
        end_idx = start_idx - gap
    return ranges


def _skeleton(i: int, spec: SyntheticSpec, sector: str, rng, snapshot: YearMonth) -> _Skeleton:
    single = rng.random() < spec.single_job_rate
    n_jobs = 1 if single else 2 + int(rng.choice(6, p=[0.28, 0.27, 0.2, 0.13, 0.08, 0.04]))
    rates = np.array([_propensity(rng, spec.buzzword_rate), _propensity(rng, spec.hedge_rate),
                      _propensity(rng, spec.passive_rate), _propensity(rng, spec.misc_rate)])
    if rates.sum() >= 0.95:
        rates *= 0.95 / rates.sum()
    ranges = _timeline(rng, n_jobs, snapshot)
    prev_senior = bool(rng.random() < spec.previous_senior_rate) if n_jobs >= 2 else None
    jobs = []
    for k, dr in enumerate(ranges):
        if k == 0:
            title = ""  # filled once the label is drawn
        elif k == 1:
            title = _pick(rng, SENIOR_TITLES if prev_senior else NON_SENIOR_TITLES)
        else:
            title = _pick(rng, SENIOR_TITLES if rng.random() < 0.15 else NON_SENIOR_TITLES)
        text = _paragraph(rng, 2 + int(rng.integers(3)), rates)
        jobs.append(JobEntry(title, text, dr))
    level = str(rng.choice(list(DEGREE_WEIGHTS), p=list(DEGREE_WEIGHTS.values())))
    education = ()
    if level != "None":
        start = YearMonth.from_index(ranges[-1].start.index - 12 * int(rng.integers(2, 6)))
        education = (EducationEntry(_pick(rng, DEGREE_BANK[level]), _pick(rng, _FIELDS),
                                    DateRange(start, YearMonth.from_index(start.index + 24))),)
    summary = None
    if rng.random() < 0.7:
        summary = f"Professional with experience in {_pick(rng, _FIELDS).lower()}. " + _paragraph(rng, 1, rates)
    n_skills = int(rng.poisson(6))
    skills = tuple(Skill(_pick(rng, _SKILLS), int(rng.integers(1, 120))) for _ in range(n_skills))

    def items(rate, label):
        return tuple(NamedItem(f"{label} {j + 1}", "") for j in range(int(rng.poisson(rate))))

    resume = Resume(
        id=f"syn-{spec.seed}-{i:06d}",
        sector=Sector(sector),
        summary=summary,
        education=education,
        # stored oldest first, as most resumes list them newest first; the extractors must not care
        experience=tuple(reversed(jobs)),
        skills=skills,
        awards=items(0.3, "Award"),
        patents=items(0.05, "Patent"),
        certifications=items(0.5, "Certification"),
        publications=items(0.2, "Publication"),
    )
    return _Skeleton(resume, n_jobs - 1, prev_senior)


# ---------------------------------------------------------------- generation

@dataclass
class SyntheticCorpus:
    spec: SyntheticSpec
    resumes: List[Resume]
    labels: List[int]
    probabilities: List[float]
    intercept: float
    moments: Dict[str, Dict[str, Tuple[float, float]]]

    @property
    def realized_rate(self) -> float:
        return float(np.mean(self.labels)) if self.labels else float("nan")

    def truth(self) -> Dict[str, object]:
        return {
            "spec": self.spec.to_dict(),
            "intercept": self.intercept,
            "coefficients": dict(self.spec.coefficients),
            "realized_rate": None if not self.labels else self.realized_rate,
            "moments": {s: {k: list(v) for k, v in m.items()} for s, m in sorted(self.moments.items())},
            "labels": {r.id: {"current_seniority": y, "p": round(p, 12)}
                       for r, y, p in zip(self.resumes, self.labels, self.probabilities)},
        }


def solve_intercept(scores: np.ndarray, target: float, bound: float = INTERCEPT_BOUND) -> float:
    """Intercept b with mean(sigmoid(b + scores)) == target, by bisection."""
    def rate(b):
        return float(np.mean(0.5 * (1.0 + np.tanh(0.5 * (b + scores)))))

    lo, hi = -bound, bound
    if rate(lo) > target or rate(hi) < target:
        raise InfeasibleSpec(
            f"base rate {target} unreachable with |intercept| <= {bound} "
            f"(attainable range {rate(lo):.4f}..{rate(hi):.4f})"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if rate(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def generate(spec: SyntheticSpec, embeddings: Optional[EmbeddingStore] = None,
             snapshot: YearMonth = SNAPSHOT) -> SyntheticCorpus:
    spec.validate()
    emb = embeddings if embeddings is not None else demo_embeddings()
    ctx = ExtractionContext(TitleClassifier(embeddings=emb, tau=DEFAULT_TAU), snapshot=snapshot)
    rng = np.random.default_rng(spec.seed)
    weights = spec.weights()
    sectors = sorted(weights)
    p = np.array([weights[s] for s in sectors], dtype=float)
    p /= p.sum()

    skeletons: List[_Skeleton] = []
    values = np.zeros((spec.size, len(FEATURE_COLUMNS)))
    for i in range(spec.size):
        sector = sectors[int(rng.choice(len(sectors), p=p))]
        sk = _skeleton(i, spec, sector, rng, snapshot)
        rec = extract_record(sk.resume, ctx)
        values[i] = rec.values(previous_seniority=bool(sk.previous_senior))
        skeletons.append(sk)

    # per-sector moments over the rows the regression will see
    beta = np.array([spec.coefficients.get(c, 0.0) for c in FEATURE_COLUMNS])
    scores = np.zeros(spec.size)
    moments: Dict[str, Dict[str, Tuple[float, float]]] = {}
    sector_of = np.array([sk.resume.sector.value for sk in skeletons])
    for s in sectors:
        idx = np.nonzero(sector_of == s)[0]
        if len(idx) == 0:
            continue
        usable = [i for i in idx if skeletons[i].previous_senior is not None] or list(idx)
        mu = values[usable].mean(axis=0)
        sd = values[usable].std(axis=0)
        for j, c in enumerate(FEATURE_COLUMNS):
            if c in BINARY_COLUMNS:
                mu[j], sd[j] = 0.0, 1.0
            elif sd[j] == 0:
                sd[j] = 1.0
        moments[s] = {c: (float(mu[j]), float(sd[j])) for j, c in enumerate(FEATURE_COLUMNS)
                      if spec.coefficients.get(c, 0.0) != 0.0}
        scores[idx] = ((values[idx] - mu) / sd) @ beta

    intercept = solve_intercept(scores, spec.base_rate) if spec.size else 0.0
    probs = 0.5 * (1.0 + np.tanh(0.5 * (intercept + scores)))
    labels = (rng.random(spec.size) < probs).astype(int)

    resumes = []
    for sk, y in zip(skeletons, labels):
        title = _pick(rng, SENIOR_TITLES if y else NON_SENIOR_TITLES)
        exp = list(sk.resume.experience)
        exp[sk.current_index] = replace(exp[sk.current_index], title=title)
        resumes.append(replace(sk.resume, experience=tuple(exp)))
    return SyntheticCorpus(spec, resumes, labels.tolist(), probs.tolist(), float(intercept), moments)


def write_synthetic(corpus: SyntheticCorpus, path, truth_path=None) -> Path:
    """Write the corpus as NDJSON plus a ``.truth.json`` sidecar; returns the sidecar path."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in corpus.resumes:
            fh.write(serialize_resume(r) + "\n")
    truth_path = Path(truth_path) if truth_path else path.with_name(path.name + ".truth.json")
    truth_path.write_text(json.dumps(corpus.truth(), indent=1, sort_keys=True) + "\n", encoding="utf-8")
    return truth_path
