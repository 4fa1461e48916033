"""Greedy longest-match phrase lookup over stemmed token sequences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .text import AnnotatedToken, stem, tokenize


def phrase_key(phrase: str) -> Tuple[str, ...]:
    """Stem sequence for a lexicon entry, tokenized the same way as running text."""
    return tuple(stem(surface) if kind == "word" else surface.lower()
                 for surface, _, _, kind, _ in tokenize(phrase))


class _Node:
    __slots__ = ("children", "terminal")

    def __init__(self):
        self.children: Dict[str, "_Node"] = {}
        self.terminal = False


class PhraseSet:
    """Trie of stemmed phrases. Single-word entries are just length-1 phrases."""

    def __init__(self, name: str, phrases: Iterable[str]):
        self.name = name
        self.root = _Node()
        self.phrases: List[str] = []
        for p in phrases:
            key = phrase_key(p)
            if not key:
                continue
            self.phrases.append(p)
            node = self.root
            for part in key:
                node = node.children.setdefault(part, _Node())
            node.terminal = True

    def __len__(self) -> int:
        return len(self.phrases)

    def __contains__(self, phrase: str) -> bool:
        node = self.root
        for part in phrase_key(phrase):
            node = node.children.get(part)
            if node is None:
                return False
        return node.terminal

    def longest_at(self, keys: Sequence[str], i: int, limit: int = None) -> int:
        """Length of the longest phrase starting at ``keys[i]`` (0 if none)."""
        end = len(keys) if limit is None else min(limit, len(keys))
        node, best = self.root, 0
        j = i
        while j < end:
            node = node.children.get(keys[j])
            if node is None:
                break
            j += 1
            if node.terminal:
                best = j - i
        return best


@dataclass(frozen=True)
class PhraseMatch:
    start: int  # token index
    end: int  # exclusive
    char_span: Tuple[int, int]
    text: str


def match_phrases(tokens: Sequence[AnnotatedToken], phrase_set: PhraseSet) -> Tuple[int, List[PhraseMatch]]:
    """Left-to-right greedy longest match; matches never overlap and never cross sentences."""
    if len(phrase_set) == 0:
        raise ValueError(f"phrase set {phrase_set.name!r} is empty")
    keys = [t.stem for t in tokens]
    matches: List[PhraseMatch] = []
    i, n = 0, len(tokens)
    while i < n:
        sent = tokens[i].sentence_index
        limit = i
        while limit < n and tokens[limit].sentence_index == sent:
            limit += 1
        length = phrase_set.longest_at(keys, i, limit)
        if length:
            first, last = tokens[i], tokens[i + length - 1]
            matches.append(PhraseMatch(i, i + length, (first.char_span[0], last.char_span[1]),
                                       " ".join(t.surface for t in tokens[i:i + length])))
            i += length
        else:
            i += 1
    return len(matches), matches
