"""Prescriptive resume-language measures."""

from .features import (
    AUXILIARY_FEATURES,
    REGRESSED_FEATURES,
    LanguageFeatureVector,
    LanguageOptions,
    extract_language_features,
    extract_text_features,
    resume_text,
)
from .lexicons import LexiconSet, default_lexicons
from .phrases import PhraseSet, match_phrases
from .sentiment import sentiment_scores
from .syntax import detect_syntax_flags
from .text import AnnotatedToken, annotate, stem

__all__ = [
    "AUXILIARY_FEATURES",
    "REGRESSED_FEATURES",
    "AnnotatedToken",
    "LanguageFeatureVector",
    "LanguageOptions",
    "LexiconSet",
    "PhraseSet",
    "annotate",
    "default_lexicons",
    "detect_syntax_flags",
    "extract_language_features",
    "extract_text_features",
    "match_phrases",
    "resume_text",
    "sentiment_scores",
    "stem",
]
