"""Per-resume language feature vector over the summary and job descriptions."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from typing import Dict, List, Optional, Sequence

from ..resume import Resume
from .lexicons import LexiconSet, default_lexicons
from .phrases import match_phrases
from .sentiment import sentence_scores, sentiment_scores_tokens
from .syntax import syntax_hits
from .text import NUM, PRON_PERSONAL, VERB_PAST, AnnotatedToken, annotate

# Order used for the regression design matrix.
REGRESSED_FEATURES = (
    "passive_voice",
    "fixed_dep",
    "vocative_dep",
    "expletive_dep",
    "discourse_dep",
    "hedges",
    "qualifiers",
    "graded_quantifiers",
    "buzzwords",
    "past_tense",
    "personal_pronouns",
    "be_verbs",
    "sentiment_positive",
    "sentiment_negative",
)
AUXILIARY_FEATURES = ("subjectivity_strong", "subjectivity_weak", "exact_quantities")
COUNT_FEATURES = tuple(f for f in REGRESSED_FEATURES + AUXILIARY_FEATURES if not f.startswith("sentiment_"))

_SYNTAX_TO_FEATURE = {
    "passive": "passive_voice",
    "fixed": "fixed_dep",
    "vocative": "vocative_dep",
    "expletive": "expletive_dep",
    "discourse": "discourse_dep",
}


@dataclass(frozen=True)
class LanguageOptions:
    rates: bool = True  # per-100-token rates; False keeps raw counts
    sentiment_level: str = "sentence"  # or "document"

    def __post_init__(self):
        if self.sentiment_level not in ("sentence", "document"):
            raise ValueError(f"sentiment_level must be 'sentence' or 'document', got {self.sentiment_level!r}")


@dataclass(frozen=True)
class LanguageFeatureVector:
    passive_voice: float = 0.0
    fixed_dep: float = 0.0
    vocative_dep: float = 0.0
    expletive_dep: float = 0.0
    discourse_dep: float = 0.0
    hedges: float = 0.0
    qualifiers: float = 0.0
    graded_quantifiers: float = 0.0
    buzzwords: float = 0.0
    past_tense: float = 0.0
    personal_pronouns: float = 0.0
    be_verbs: float = 0.0
    sentiment_positive: float = 0.0
    sentiment_negative: float = 0.0
    subjectivity_strong: float = 0.0
    subjectivity_weak: float = 0.0
    exact_quantities: float = 0.0
    n_tokens: int = 0
    counts: Dict[str, int] = field(default_factory=dict, compare=False)

    def regressed(self) -> List[float]:
        return [getattr(self, name) for name in REGRESSED_FEATURES]

    def as_dict(self) -> Dict[str, float]:
        d = asdict(self)
        d.pop("counts")
        return d


def resume_text(resume: Resume) -> str:
    """Summary (if any) followed by every job description, one block per line."""
    parts = []
    if resume.summary:
        parts.append(resume.summary)
    parts.extend(j.description for j in resume.experience if j.description)
    return "\n".join(parts)


def quantity_spans(tokens: Sequence[AnnotatedToken]) -> List[range]:
    """Maximal runs of NUM tokens within a sentence; "30 %" or "two hundred" count once."""
    runs: List[range] = []
    i, n = 0, len(tokens)
    while i < n:
        if tokens[i].pos == NUM:
            j = i + 1
            while j < n and tokens[j].pos == NUM and tokens[j].sentence_index == tokens[i].sentence_index:
                j += 1
            runs.append(range(i, j))
            i = j
        else:
            i += 1
    return runs


def raw_counts(tokens: Sequence[AnnotatedToken], lex: LexiconSet) -> Dict[str, int]:
    counts = {name: len(hits) for name, hits in rule_hits(tokens, lex).items()}
    return counts


def rule_hits(tokens: Sequence[AnnotatedToken], lex: LexiconSet) -> Dict[str, list]:
    """Every countable hit, keyed by feature name; values are lists of (start, end) token ranges."""
    out: Dict[str, list] = {}
    for rule, hits in syntax_hits(tokens, lex).items():
        out[_SYNTAX_TO_FEATURE[rule]] = [(h.start, h.end) for h in hits]
    for name in ("hedges", "qualifiers", "graded_quantifiers", "buzzwords", "subjectivity_strong",
                 "subjectivity_weak"):
        _, matches = match_phrases(tokens, getattr(lex, name))
        out[name] = [(m.start, m.end) for m in matches]
    out["past_tense"] = [(i, i + 1) for i, t in enumerate(tokens) if t.pos == VERB_PAST]
    out["personal_pronouns"] = [(i, i + 1) for i, t in enumerate(tokens) if t.pos == PRON_PERSONAL]
    out["be_verbs"] = [(i, i + 1) for i, t in enumerate(tokens) if t.lemma == "be"]
    out["exact_quantities"] = [(r.start, r.stop) for r in quantity_spans(tokens)]
    return out


def features_from_tokens(
    tokens: Sequence[AnnotatedToken],
    lex: Optional[LexiconSet] = None,
    options: LanguageOptions = LanguageOptions(),
) -> LanguageFeatureVector:
    lex = lex or default_lexicons()
    n_words = sum(1 for t in tokens if t.is_word)
    if n_words == 0:
        return LanguageFeatureVector(counts={name: 0 for name in COUNT_FEATURES})
    counts = raw_counts(tokens, lex)
    scale = 100.0 / n_words if options.rates else 1.0
    values = {name: counts[name] * scale for name in COUNT_FEATURES}
    if options.sentiment_level == "sentence":
        pos, neg = sentiment_scores_tokens(tokens, lex)
    else:
        pos, neg = sentence_scores(tokens, lex)
    return LanguageFeatureVector(
        sentiment_positive=pos, sentiment_negative=neg, n_tokens=n_words, counts=counts, **values
    )


def extract_text_features(
    text: str, lex: Optional[LexiconSet] = None, options: LanguageOptions = LanguageOptions()
) -> LanguageFeatureVector:
    return features_from_tokens(annotate(text), lex, options)


def extract_language_features(
    resume: Resume, lex: Optional[LexiconSet] = None, options: LanguageOptions = LanguageOptions()
) -> LanguageFeatureVector:
    return extract_text_features(resume_text(resume), lex, options)


FEATURE_NAMES = tuple(f.name for f in fields(LanguageFeatureVector) if f.name not in ("n_tokens", "counts"))
