"""Senior / non-senior job-title classification.

Stage one looks for a senior term among the title tokens. Stage two falls back to
word mover's distance between the title and each single senior term over a word
embedding, accepting the title when the closest term lies within ``tau``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .job_history import chronological
from .resume import SNAPSHOT, Resume, YearMonth
from .transport import transport

DEFAULT_SENIOR_TERMS = frozenset(
    ["senior", "chief", "lead", "head", "president", "manager", "director", "supervisor", "superintendent",
     "ceo", "coordinator", "principal", "founder", "partner", "sr", "cfo", "cio"]
)
DEFAULT_TAU = 0.35

TITLE_STOPWORDS = frozenset(
    "of the and a an for in at to on with & or de".split()
)

_SPLIT = re.compile(r"[^\w]+|_", re.UNICODE)


class DistanceUndefined(ValueError):
    """Every token on one side is out of vocabulary."""


def normalize_title(title: str) -> List[str]:
    return [t for t in _SPLIT.split(title.lower()) if t and t not in TITLE_STOPWORDS]


class SeniorTermSet:
    def __init__(self, terms: Iterable[str] = DEFAULT_SENIOR_TERMS):
        self.terms: FrozenSet[str] = frozenset(t.strip().lower() for t in terms if t.strip())
        if not self.terms:
            raise ValueError("senior term set is empty")

    def __contains__(self, token: str) -> bool:
        return token in self.terms

    def __iter__(self):
        return iter(sorted(self.terms))

    def __len__(self) -> int:
        return len(self.terms)


class EmbeddingStore:
    """Word -> unit-normalized vector, immutable after construction. Lookups are case-insensitive."""

    def __init__(self, words: Sequence[str], vectors: np.ndarray):
        vectors = np.asarray(vectors, dtype=float)
        if vectors.ndim != 2 or len(words) != vectors.shape[0]:
            raise ValueError("need one vector per word")
        norms = np.linalg.norm(vectors, axis=1)
        if (norms == 0).any():
            bad = [w for w, nrm in zip(words, norms) if nrm == 0]
            raise ValueError(f"zero vectors for {bad[:5]}")
        self.dim = vectors.shape[1]
        self._index: Dict[str, int] = {}
        keep = []
        for i, w in enumerate(words):
            key = w.lower()
            if key not in self._index:  # first occurrence wins
                self._index[key] = len(keep)
                keep.append(i)
        self._unit = vectors[keep] / norms[keep, None]
        self._unit.setflags(write=False)

    @classmethod
    def from_file(cls, path) -> "EmbeddingStore":
        """Read "word v1 ... vd" lines, with an optional leading "V d" header."""
        words, rows = [], []
        dim = None
        with open(path, encoding="utf-8") as fh:
            for n, line in enumerate(fh, 1):
                parts = line.rstrip("\n").split(" ")
                parts = [p for p in parts if p]
                if not parts:
                    continue
                if n == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
                    dim = int(parts[1])
                    continue
                vec = [float(x) for x in parts[1:]]
                if dim is None:
                    dim = len(vec)
                if len(vec) != dim:
                    raise ValueError(f"{path}:{n}: expected {dim} components, got {len(vec)}")
                words.append(parts[0])
                rows.append(vec)
        if not rows:
            raise ValueError(f"{path}: no vectors")
        return cls(words, np.array(rows))

    def write(self, path, header: bool = True) -> None:
        words = sorted(self._index, key=self._index.get)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            if header:
                fh.write(f"{len(words)} {self.dim}\n")
            for w in words:
                fh.write(w + " " + " ".join(f"{x:.6f}" for x in self._unit[self._index[w]]) + "\n")

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._index

    def __len__(self) -> int:
        return len(self._index)

    def vector(self, word: str) -> np.ndarray:
        return self._unit[self._index[word.lower()]]

    def vocabulary(self) -> List[str]:
        return sorted(self._index)


def _bag(tokens: Iterable[str], emb: EmbeddingStore) -> List[str]:
    seen: Dict[str, None] = {}
    for t in tokens:
        t = t.lower()
        if t in emb:
            seen.setdefault(t, None)
    return list(seen)


def _problem(a: Iterable[str], b: Iterable[str], emb: EmbeddingStore):
    bag_a, bag_b = _bag(a, emb), _bag(b, emb)
    if not bag_a or not bag_b:
        raise DistanceUndefined("no in-vocabulary tokens on one side")
    va = np.array([emb.vector(w) for w in bag_a])
    vb = np.array([emb.vector(w) for w in bag_b])
    diff = va[:, None, :] - vb[None, :, :]
    cost = np.sqrt((diff * diff).sum(axis=2))
    wa = np.full(len(bag_a), 1.0 / len(bag_a))
    wb = np.full(len(bag_b), 1.0 / len(bag_b))
    return wa, wb, cost, bag_a, bag_b


def word_mover_distance(a: Iterable[str], b: Iterable[str], emb: EmbeddingStore) -> float:
    """Exact transport cost between uniform bags over the unique in-vocabulary tokens of ``a`` and ``b``."""
    wa, wb, cost, bag_a, bag_b = _problem(a, b, emb)
    if set(bag_a) == set(bag_b):
        return 0.0
    value, _ = transport(wa, wb, cost)
    return max(value, 0.0)


def relaxed_wmd_lower_bound(a: Iterable[str], b: Iterable[str], emb: EmbeddingStore) -> float:
    """Max of the two one-sided nearest-neighbour relaxations; never exceeds the exact distance."""
    wa, wb, cost, _, _ = _problem(a, b, emb)
    return float(max(wa @ cost.min(axis=1), wb @ cost.min(axis=0)))


@dataclass(frozen=True)
class ExactMatch:
    term: str


@dataclass(frozen=True)
class Embedding:
    distance: float
    term: str


@dataclass(frozen=True)
class NoEvidence:
    pass


Evidence = Union[ExactMatch, Embedding, NoEvidence]


@dataclass(frozen=True)
class TitleClassification:
    is_senior: bool
    evidence: Evidence

    def describe(self) -> str:
        ev = self.evidence
        if isinstance(ev, ExactMatch):
            return f"exact:{ev.term}"
        if isinstance(ev, Embedding):
            return f"wmd:{ev.term}:{ev.distance:.6f}"
        return "none"


class TitleClassifier:
    def __init__(
        self,
        terms: Optional[SeniorTermSet] = None,
        embeddings: Optional[EmbeddingStore] = None,
        tau: float = DEFAULT_TAU,
    ):
        if tau < 0:
            raise ValueError("tau must be >= 0")
        self.terms = terms or SeniorTermSet()
        self.embeddings = embeddings
        self.tau = tau
        self._cache: Dict[Tuple[str, ...], TitleClassification] = {}
        self._term_list = sorted(self.terms.terms)

    def classify_tokens(self, tokens: Sequence[str]) -> TitleClassification:
        key = tuple(tokens)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._classify(tokens)
            self._cache[key] = hit
        return hit

    def _classify(self, tokens: Sequence[str]) -> TitleClassification:
        for tok in tokens:
            if tok in self.terms:
                return TitleClassification(True, ExactMatch(tok))
        emb = self.embeddings
        # tau == 0 is plain term matching; skip the embedding stage entirely
        if emb is None or not tokens or self.tau == 0:
            return TitleClassification(False, NoEvidence())
        best: Optional[Tuple[float, str]] = None
        for term in self._term_list:
            if term not in emb:
                continue
            try:
                d = relaxed_wmd_lower_bound(tokens, [term], emb)
                if best is not None and d > best[0]:
                    continue  # lower bound already worse than the best exact distance
                d = word_mover_distance(tokens, [term], emb)
            except DistanceUndefined:
                return TitleClassification(False, NoEvidence())
            if best is None or d < best[0]:
                best = (d, term)
        if best is None:
            return TitleClassification(False, NoEvidence())
        return TitleClassification(best[0] <= self.tau, Embedding(best[0], best[1]))

    def classify(self, title: str) -> TitleClassification:
        return self.classify_tokens(normalize_title(title))


def classify_title(
    title: str,
    terms: Optional[SeniorTermSet] = None,
    emb: Optional[EmbeddingStore] = None,
    tau: float = DEFAULT_TAU,
) -> TitleClassification:
    return TitleClassifier(terms, emb, tau).classify(title)


@dataclass(frozen=True)
class ResumeSeniority:
    current: Optional[bool]
    previous: Optional[bool]
    current_title: Optional[TitleClassification] = None
    previous_title: Optional[TitleClassification] = None


def job_order(resume: Resume, snapshot: YearMonth = SNAPSHOT) -> List[int]:
    """Job indices from most to least recent; undated jobs follow in file order."""
    dated = chronological(resume.experience, snapshot)
    undated = [i for i, j in enumerate(resume.experience) if j.date_range is None]
    return list(reversed(dated)) + undated


def classify_resume_seniority(
    resume: Resume, classifier: TitleClassifier, snapshot: YearMonth = SNAPSHOT
) -> ResumeSeniority:
    """Current = most recent job; previous = second most recent, only when two dated jobs exist."""
    if not resume.experience:
        return ResumeSeniority(None, None)
    dated = chronological(resume.experience, snapshot)
    order = job_order(resume, snapshot)
    cur = classifier.classify(resume.experience[order[0]].title)
    if len(dated) < 2:
        return ResumeSeniority(cur.is_senior, None, cur, None)
    prev = classifier.classify(resume.experience[dated[-2]].title)
    return ResumeSeniority(cur.is_senior, prev.is_senior, cur, prev)


def load_default_embeddings() -> EmbeddingStore:
    from importlib import resources

    with resources.as_file(resources.files("resume_seniority.data").joinpath("title_embeddings.txt")) as p:
        return EmbeddingStore.from_file(Path(p))
