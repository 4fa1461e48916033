"""Pattern-rule stand-ins for the dependency labels nsubjpass, expl, discourse, vocative and fixed."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .lexicons import LexiconSet
from .phrases import match_phrases
from .text import (
    ADV,
    BE_FORMS,
    BULLETS,
    INTJ,
    MODALS,
    NEGATION_PARTICLES,
    PROPN,
    SYM,
    VERB_PARTICIPLE,
    AnnotatedToken,
    sentences,
)

SYNTAX_RULES = ("passive", "expletive", "discourse", "vocative", "fixed")

PASSIVE_WINDOW = 3
ADDRESS_TERMS = frozenset(
    "guys folks everyone everybody all team friends sir sirs madam ma'am maam ladies gentlemen "
    "colleagues people y'all dude buddy boss".split()
)
GREETINGS = frozenset(["hey", "hi", "hello", "dear"])
CLAUSE_BREAKS = frozenset([";", ":"])


@dataclass(frozen=True)
class RuleHit:
    rule: str
    start: int  # token index
    end: int  # exclusive
    char_span: Tuple[int, int]
    sentence_index: int


def _hit(rule: str, tokens: Sequence[AnnotatedToken], start: int, end: int) -> RuleHit:
    return RuleHit(rule, start, end, (tokens[start].char_span[0], tokens[end - 1].char_span[1]),
                   tokens[start].sentence_index)


def clause_starts(tokens: Sequence[AnnotatedToken]) -> List[int]:
    """Token indices that open a clause: sentence starts (after any bullet glyph) and after ';' / ':'."""
    starts = []
    offset = 0
    for sent in sentences(list(tokens)):
        expect = True
        for k, tok in enumerate(sent):
            i = offset + k
            if tok.pos == SYM and (tok.surface in BULLETS or tok.surface in CLAUSE_BREAKS):
                expect = True
                continue
            if expect:
                starts.append(i)
                expect = False
        offset += len(sent)
    return starts


def _sentence_end(tokens: Sequence[AnnotatedToken], i: int) -> int:
    s = tokens[i].sentence_index
    j = i
    while j < len(tokens) and tokens[j].sentence_index == s:
        j += 1
    return j


def find_passive(tokens: Sequence[AnnotatedToken]) -> List[RuleHit]:
    hits = []
    i, n = 0, len(tokens)
    while i < n:
        tok = tokens[i]
        if tok.lemma in ("be", "get") and tok.pos != SYM:
            end = _sentence_end(tokens, i)
            j = i + 1
            while j < min(end, i + 1 + PASSIVE_WINDOW):
                nxt = tokens[j]
                if nxt.pos == VERB_PARTICIPLE and nxt.lemma != "be":
                    hits.append(_hit("passive", tokens, i, j + 1))
                    break
                if nxt.pos == ADV or nxt.lower in NEGATION_PARTICLES or nxt.lemma == "be":
                    j += 1
                    continue
                break
            if hits and hits[-1].start == i:
                i = hits[-1].end
                continue
        i += 1
    return hits


def find_expletive(tokens: Sequence[AnnotatedToken], starts: Sequence[int]) -> List[RuleHit]:
    hits = []
    for i in starts:
        if tokens[i].lower not in ("there", "it"):
            continue
        end = _sentence_end(tokens, i)
        j = i + 1
        # "there will be", "there has been"
        if j < end and (tokens[j].lower in MODALS or tokens[j].lemma == "have"):
            j += 1
        if j < end and tokens[j].lower in BE_FORMS:
            hits.append(_hit("expletive", tokens, i, j + 1))
    return hits


def _followed_by_comma_or_end(tokens: Sequence[AnnotatedToken], j: int) -> bool:
    if j >= len(tokens) or tokens[j].sentence_index != tokens[j - 1].sentence_index:
        return True
    return tokens[j].surface == "," or (tokens[j].pos == SYM and tokens[j].surface in ".!?")


def find_discourse(tokens: Sequence[AnnotatedToken], starts: Sequence[int], lex: LexiconSet) -> List[RuleHit]:
    hits = []
    keys = [t.stem for t in tokens]
    start_set = set(starts)
    for i in starts:
        end = _sentence_end(tokens, i)
        length = lex.discourse_markers.longest_at(keys, i, end)
        if length and (tokens[i].pos == INTJ and length == 1 or _followed_by_comma_or_end(tokens, i + length)):
            hits.append(_hit("discourse", tokens, i, i + length))
    for i, tok in enumerate(tokens):
        if tok.surface in lex.emoticons and not any(h.start <= i < h.end for h in hits):
            hits.append(_hit("discourse", tokens, i, i + 1))
        elif tok.pos == INTJ and i not in start_set and tok.lower in ("uh", "um", "umm", "hmm", "lol"):
            hits.append(_hit("discourse", tokens, i, i + 1))
    hits.sort(key=lambda h: h.start)
    return hits


def find_vocative(tokens: Sequence[AnnotatedToken], starts: Sequence[int], discourse: Sequence[RuleHit]) -> List[RuleHit]:
    taken = {h.start for h in discourse}
    hits = []
    for i in starts:
        if i in taken:
            continue
        end = _sentence_end(tokens, i)
        tok = tokens[i]
        j = i + 1
        if tok.lower in GREETINGS:
            while j < end and tokens[j].pos == PROPN:
                j += 1
            if j < end and tokens[j].surface == ",":
                hits.append(_hit("vocative", tokens, i, j))
            continue
        if tok.lower in ADDRESS_TERMS or tok.pos == PROPN:
            while j < end and tokens[j].pos == PROPN:
                j += 1
            if j < end and tokens[j].surface == ",":
                hits.append(_hit("vocative", tokens, i, j))
    return hits


def find_fixed(tokens: Sequence[AnnotatedToken], lex: LexiconSet) -> List[RuleHit]:
    _, matches = match_phrases(tokens, lex.fixed_mwe)
    return [_hit("fixed", tokens, m.start, m.end) for m in matches]


def syntax_hits(tokens: Sequence[AnnotatedToken], lex: LexiconSet) -> Dict[str, List[RuleHit]]:
    starts = clause_starts(tokens)
    discourse = find_discourse(tokens, starts, lex)
    return {
        "passive": find_passive(tokens),
        "expletive": find_expletive(tokens, starts),
        "discourse": discourse,
        "vocative": find_vocative(tokens, starts, discourse),
        "fixed": find_fixed(tokens, lex),
    }


def detect_syntax_flags(tokens: Sequence[AnnotatedToken], lex: LexiconSet) -> Dict[str, int]:
    return {rule: len(hits) for rule, hits in syntax_hits(tokens, lex).items()}
