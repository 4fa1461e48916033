"""Per-sentence writing diagnostics built from the same detectors as the language features."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .language.features import COUNT_FEATURES, rule_hits
from .language.lexicons import LexiconSet, default_lexicons
from .language.sentiment import sentence_scores
from .language.text import VERB_PRESENT, AnnotatedToken, annotate, sentences

RATIONALE: Dict[str, str] = {
    "passive_voice": "Prefer active voice: say who did the work.",
    "graded_quantifiers": "Give an exact figure instead of a vague amount.",
    "buzzwords": "Stock phrases carry no information; show the quality through a concrete result.",
    "fixed_dep": "Multi-word connectives pad the sentence; cut or shorten them.",
    "discourse_dep": "Conversational fillers and emoticons read as informal; remove them.",
    "expletive_dep": "An empty 'there is' / 'it was' opening delays the point; start with the subject.",
    "vocative_dep": "Addressing the reader directly is out of place in a resume.",
    "hedges": "Hedging weakens the claim; state it plainly.",
    "qualifiers": "Intensifiers and qualifiers add no content; drop them.",
    "subjectivity_strong": "Strongly subjective wording reads as emotional; keep the tone factual.",
    "subjectivity_weak": "Subjective wording; prefer a verifiable statement.",
    "personal_pronouns": "Drop personal pronouns; the reader already knows whose resume it is.",
    "be_verbs": "Replace the form of 'be' with an action verb.",
    "present_tense": "Describe completed work with past-tense verbs.",
    "negative_sentiment": "Negative phrasing reflects badly on the writer; rephrase neutrally.",
}

# counted features that are advice to follow rather than habits to avoid
NOT_DIAGNOSED = frozenset(["past_tense", "exact_quantities"])
NEGATIVE_THRESHOLD = 0.3


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    sentence_index: int
    char_span: Tuple[int, int]
    text: str
    rationale: str

    def render(self, source: str = "") -> str:
        loc = f"{source}:" if source else ""
        return (f"{loc}{self.sentence_index + 1}:{self.char_span[0]}-{self.char_span[1]}: "
                f"{self.rule}: \"{self.text}\"\n    {self.rationale}")


@dataclass
class LintReport:
    diagnostics: List[Diagnostic]
    counts: Dict[str, int]  # same numbers as the language feature raw counts
    n_tokens: int


def _span(tokens: Sequence[AnnotatedToken], start: int, end: int, text: str) -> Tuple[Tuple[int, int], str]:
    a, b = tokens[start].char_span[0], tokens[end - 1].char_span[1]
    return (a, b), text[a:b]


def lint_text(text: str, lex: Optional[LexiconSet] = None) -> LintReport:
    lex = lex or default_lexicons()
    tokens = annotate(text)
    diags: List[Diagnostic] = []
    hits_by_rule = rule_hits(tokens, lex)
    for name, hits in hits_by_rule.items():
        if name in NOT_DIAGNOSED:
            continue
        for start, end in hits:
            span, snippet = _span(tokens, start, end, text)
            diags.append(Diagnostic(name, tokens[start].sentence_index, span, snippet, RATIONALE[name]))
    for i, tok in enumerate(tokens):
        if tok.pos == VERB_PRESENT and tok.surface.lower().endswith("s"):
            span, snippet = _span(tokens, i, i + 1, text)
            diags.append(Diagnostic("present_tense", tok.sentence_index, span, snippet, RATIONALE["present_tense"]))
    for sent in sentences(tokens):
        _, neg = sentence_scores(sent, lex)
        if neg >= NEGATIVE_THRESHOLD:
            span = (sent[0].char_span[0], sent[-1].char_span[1])
            diags.append(Diagnostic("negative_sentiment", sent[0].sentence_index, span, text[span[0]:span[1]],
                                    RATIONALE["negative_sentiment"]))
    diags.sort(key=lambda d: (d.sentence_index, d.char_span, d.rule))
    n_words = sum(1 for t in tokens if t.is_word)
    counts = {k: (len(hits_by_rule[k]) if n_words else 0) for k in COUNT_FEATURES}
    return LintReport(diags, counts, n_words)
