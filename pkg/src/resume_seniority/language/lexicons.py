"""Loading of the word lists and valence table used by the language measures."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Dict, FrozenSet, Iterator, Optional, Tuple

from .phrases import PhraseSet

PHRASE_LEXICONS = (
    "buzzwords",
    "hedges",
    "qualifiers",
    "graded_quantifiers",
    "fixed_mwe",
    "discourse_markers",
    "subjectivity_strong",
    "subjectivity_weak",
)


def _lines(text: str) -> Iterator[str]:
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        yield line.rstrip("\r")


def _read(name: str, directory: Optional[Path]) -> str:
    if directory is not None:
        candidate = Path(directory) / f"{name}.txt"
        if candidate.exists():
            return candidate.read_text(encoding="utf-8")
    return resources.files("resume_seniority.data").joinpath("lexicons", f"{name}.txt").read_text(encoding="utf-8")


def read_word_list(text: str) -> Tuple[str, ...]:
    return tuple(line.strip().lower() for line in _lines(text))


def read_weighted(text: str) -> Dict[str, float]:
    table: Dict[str, float] = {}
    for n, line in enumerate(_lines(text), 1):
        try:
            term, value = line.split("\t")[:2]
            table[term.strip().lower()] = float(value)
        except ValueError:
            raise ValueError(f"entry {n}: expected 'term<TAB>value', got {line!r}") from None
    return table


@dataclass(frozen=True)
class LexiconSet:
    buzzwords: PhraseSet
    hedges: PhraseSet
    qualifiers: PhraseSet
    graded_quantifiers: PhraseSet
    fixed_mwe: PhraseSet
    discourse_markers: PhraseSet
    subjectivity_strong: PhraseSet
    subjectivity_weak: PhraseSet
    emoticons: FrozenSet[str]
    sentiment_valence: Dict[str, float]
    boosters: Dict[str, float]
    negators: FrozenSet[str]

    @classmethod
    def load(cls, directory=None) -> "LexiconSet":
        """Shipped defaults, with any same-named file in ``directory`` taking precedence."""
        directory = Path(directory) if directory else None
        sets = {name: PhraseSet(name, read_word_list(_read(name, directory))) for name in PHRASE_LEXICONS}
        return cls(
            emoticons=frozenset(line.strip() for line in _lines(_read("emoticons", directory))),
            sentiment_valence=read_weighted(_read("valence", directory)),
            boosters=read_weighted(_read("boosters", directory)),
            negators=frozenset(read_word_list(_read("negators", directory))),
            **sets,
        )


_DEFAULT: Optional[LexiconSet] = None


def default_lexicons() -> LexiconSet:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = LexiconSet.load()
    return _DEFAULT
