"""Lexicon sentiment: per-sentence positive/negative mass, squashed into [0, 1] and averaged."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .lexicons import LexiconSet
from .text import AnnotatedToken, sentences, annotate

NORMALIZATION_ALPHA = 15.0
NEGATION_SCALAR = -0.74
WINDOW = 3
# booster influence fades with distance from the scored word
BOOSTER_DECAY = (1.0, 0.95, 0.9)


def squash(x: float, alpha: float = NORMALIZATION_ALPHA) -> float:
    """x / sqrt(x^2 + alpha) for x >= 0."""
    return x / math.sqrt(x * x + alpha)


@dataclass(frozen=True)
class ScoredWord:
    index: int
    valence: float


def token_valences(sentence: Sequence[AnnotatedToken], lex: LexiconSet) -> List[ScoredWord]:
    lowers = [t.lower for t in sentence]
    out = []
    for i, tok in enumerate(sentence):
        w = lowers[i]
        if w in lex.boosters:
            continue
        valence = lex.sentiment_valence.get(w)
        if valence is None and tok.lemma != w:
            valence = lex.sentiment_valence.get(tok.lemma)
        if not valence:
            continue
        for back in range(1, WINDOW + 1):
            j = i - back
            if j < 0:
                break
            inc = lex.boosters.get(lowers[j])
            if inc is not None:
                valence += math.copysign(inc, valence) * BOOSTER_DECAY[back - 1]
        if any(lowers[j] in lex.negators for j in range(max(0, i - WINDOW), i)):
            valence *= NEGATION_SCALAR
        out.append(ScoredWord(i, valence))
    return out


def sentence_scores(sentence: Sequence[AnnotatedToken], lex: LexiconSet) -> Tuple[float, float]:
    pos = neg = 0.0
    for sw in token_valences(sentence, lex):
        if sw.valence > 0:
            pos += sw.valence
        else:
            neg += -sw.valence
    return squash(pos), squash(neg)


def sentiment_scores_tokens(tokens: Sequence[AnnotatedToken], lex: LexiconSet) -> Tuple[float, float]:
    groups = [s for s in sentences(list(tokens)) if any(t.is_word for t in s)]
    if not groups:
        return 0.0, 0.0
    pos_total = neg_total = 0.0
    for s in groups:
        p, n = sentence_scores(s, lex)
        pos_total += p
        neg_total += n
    return pos_total / len(groups), neg_total / len(groups)


def sentiment_scores(text: str, lex: LexiconSet) -> Tuple[float, float]:
    return sentiment_scores_tokens(annotate(text), lex)
