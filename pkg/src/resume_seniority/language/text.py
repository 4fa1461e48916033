"""Deterministic tokenizer, suffix-stripping stemmer and rule-based coarse POS tagger.

Nothing here is statistical: every decision comes from the closed word lists
and suffix rules below, so annotation is bit-stable across runs and releases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

NOUN = "NOUN"
PROPN = "PROPN"
VERB_PAST = "VERB-PAST"
VERB_PARTICIPLE = "VERB-PARTICIPLE"
VERB_PRESENT = "VERB-PRESENT"
PRON_PERSONAL = "PRON-PERSONAL"
ADV = "ADV"
ADJ = "ADJ"
INTJ = "INTJ"
NUM = "NUM"
SYM = "SYM"
OTHER = "OTHER"

POS_TAGS = (NOUN, PROPN, VERB_PAST, VERB_PARTICIPLE, VERB_PRESENT, PRON_PERSONAL, ADV, ADJ, INTJ, NUM, SYM, OTHER)


@dataclass(frozen=True)
class AnnotatedToken:
    surface: str
    stem: str
    lemma: str
    pos: str
    sentence_index: int
    char_span: Tuple[int, int]

    @property
    def lower(self) -> str:
        return self.surface.lower()

    @property
    def is_word(self) -> bool:
        """Counts toward the per-100-token denominator (anything but bare punctuation)."""
        return self.pos != SYM or self.surface in EMOTICONS


# ---------------------------------------------------------------- stemmer

_VOWELS = set("aeiou")


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    # number of VC sequences
    m, prev_vowel = 0, False
    for i in range(len(stem)):
        vowel = not _is_consonant(stem, i)
        if prev_vowel and not vowel:
            m += 1
        prev_vowel = vowel
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(w: str) -> bool:
    return len(w) >= 2 and w[-1] == w[-2] and _is_consonant(w, len(w) - 1)


def _ends_cvc(w: str) -> bool:
    return (
        len(w) >= 3
        and _is_consonant(w, len(w) - 3)
        and not _is_consonant(w, len(w) - 2)
        and _is_consonant(w, len(w) - 1)
        and w[-1] not in "wxy"
    )


# Frozen rule table: plural stripping, then -ed/-ing removal with e-restoration.
# (Porter's step 1a/1b; later Porter steps are deliberately omitted.)
_PLURAL_RULES = (("sses", "ss"), ("ies", "i"), ("ss", "ss"), ("s", ""))
_RESTORE_E = ("at", "bl", "iz")


def stem(word: str) -> str:
    w = word.lower()
    if len(w) <= 2 or not w.isalpha():
        return w
    for suffix, repl in _PLURAL_RULES:
        if w.endswith(suffix):
            w = w[: len(w) - len(suffix)] + repl
            break
    if w.endswith("eed"):
        if _measure(w[:-3]) > 0:
            w = w[:-1]
        return w
    for suffix in ("ed", "ing"):
        if w.endswith(suffix) and _has_vowel(w[: -len(suffix)]):
            w = w[: -len(suffix)]
            if w.endswith(_RESTORE_E):
                w += "e"
            elif _ends_double_consonant(w) and w[-1] not in "lsz":
                w = w[:-1]
            elif _measure(w) == 1 and _ends_cvc(w):
                w += "e"
            break
    if w.endswith("i") and len(w) > 2 and word.lower().endswith("ies"):
        w = w[:-1] + "y"
    return w


# ---------------------------------------------------------------- tokenizer

EMOTICONS = frozenset([":)", ":-)", ":(", ":-(", ";)", ";-)", ":D", ":-D", ":P", ":-P", ":p", ":/", "<3", "=)"])

_TOKEN_RE = re.compile(
    r"""
    (?P<emo>(?<!\w)(?:[:;=]-?[)(DPp/]|<3)(?!\w))
  | (?P<num>[$€£]?\d+(?:[.,]\d+)*%?)
  | (?P<word>[A-Za-z0-9]+(?:['’\-][A-Za-z0-9]+)*)
  | (?P<punct>\S)
    """,
    re.VERBOSE,
)

_CLITICS = ("n't", "'m", "'re", "'s", "'ve", "'ll", "'d")
TERMINAL = frozenset([".", "!", "?"])
BULLETS = frozenset(["•", "*", "-", "–", "—", "·", "▪", "●"])


def _split_clitics(word: str, start: int) -> List[Tuple[str, int, int]]:
    w = word.replace("’", "'")
    lw = w.lower()
    for c in _CLITICS:
        if lw.endswith(c) and len(w) > len(c):
            cut = len(w) - len(c)
            return [(word[:cut], start, start + cut), (word[cut:], start + cut, start + len(word))]
    return [(word, start, start + len(word))]


def tokenize(text: str) -> Iterator[Tuple[str, int, int, str, bool]]:
    """Yield (surface, start, end, kind, line_start) with char offsets into ``text``."""
    pos = 0
    for line in text.splitlines(keepends=True):
        first = True
        for m in _TOKEN_RE.finditer(line):
            kind = m.lastgroup
            s, e = m.start() + pos, m.end() + pos
            if kind == "word":
                for piece, ps, pe in _split_clitics(m.group(), s):
                    yield piece, ps, pe, kind, first
                    first = False
            else:
                yield m.group(), s, e, kind, first
                first = False
        pos += len(line)


# ---------------------------------------------------------------- tagger lexicon

PERSONAL_PRONOUNS = frozenset(
    "i me my mine myself we us our ours ourselves he him his himself she her hers herself "
    "they them their theirs themselves".split()
)
DETERMINERS = frozenset(
    "a an the this that these those my our your his her its their each every any no another "
    "such what which whose".split()
)
POSSESSIVE_DET = frozenset("my our your his her its their".split())

BE_FORMS = {
    "be": "be", "am": "be", "is": "be", "are": "be", "was": "be", "were": "be", "been": "be",
    "being": "be", "'m": "be", "'re": "be",
}
GET_FORMS = {"get": "get", "gets": "get", "got": "get", "gotten": "get", "getting": "get"}
HAVE_FORMS = {"have": "have", "has": "have", "had": "have", "having": "have", "'ve": "have"}
DO_FORMS = {"do": "do", "does": "do", "did": "do", "done": "do", "doing": "do"}
MODALS = frozenset("can could will would shall should may might must 'll 'd ca wo".split())
NEGATION_PARTICLES = frozenset(["not", "n't", "never"])

PREPOSITIONS_CONJ = frozenset(
    "of in on at by for with about against between into through during before after above below "
    "to from up down over under again further than as until while since across along among around "
    "behind beyond despite except inside outside per via within without toward towards upon onto "
    "and or but nor yet so if because although though whereas unless whether both either neither "
    "it its you your yours yourself yourselves itself who whom whoever something anything everything "
    "nothing someone anyone everyone nobody somebody anybody everybody one ones there here".split()
)

INTERJECTIONS = frozenset("oh uh um umm ah wow hey hi hello hmm yeah ok okay lol oops ugh whoa yay alas".split())

ADVERBS = frozenset(
    "very also not never always often sometimes just really quite too then now still yet already soon "
    "together abroad however therefore thus moreover furthermore almost rather instead ever even perhaps "
    "maybe again away back forward ahead later once twice only well".split()
)
_NOT_LY_ADVERBS = frozenset(
    "only family supply apply reply italy july assembly ally rally bully holy ugly jelly belly lily fly "
    "comply multiply imply anomaly monopoly butterfly early friendly likely lonely lovely elderly "
    "orderly costly curly silly".split()
)
ADJECTIVES = frozenset(
    "responsible good great new large small big high low many much few several various key main senior "
    "junior strong excellent able available daily weekly monthly annual current previous early likely "
    "friendly full free own other same different important major minor proficient familiar".split()
)
_ADJ_SUFFIXES = ("ful", "ous", "ive", "able", "ible", "ical", "less", "ish")

NUMBER_WORDS = frozenset(
    "zero one two three four five six seven eight nine ten eleven twelve thirteen fourteen fifteen "
    "sixteen seventeen eighteen nineteen twenty thirty forty fifty sixty seventy eighty ninety hundred "
    "thousand million billion dozen".split()
)

# Irregular verbs: base -> (past, participle)
IRREGULAR = {
    "be": ("was", "been"), "begin": ("began", "begun"), "break": ("broke", "broken"),
    "bring": ("brought", "brought"), "build": ("built", "built"), "buy": ("bought", "bought"),
    "choose": ("chose", "chosen"), "come": ("came", "come"), "cut": ("cut", "cut"),
    "do": ("did", "done"), "draw": ("drew", "drawn"), "drive": ("drove", "driven"),
    "feed": ("fed", "fed"), "fight": ("fought", "fought"), "find": ("found", "found"),
    "fly": ("flew", "flown"), "forget": ("forgot", "forgotten"), "get": ("got", "gotten"),
    "give": ("gave", "given"), "go": ("went", "gone"), "grow": ("grew", "grown"),
    "hold": ("held", "held"), "keep": ("kept", "kept"), "know": ("knew", "known"),
    "lead": ("led", "led"), "leave": ("left", "left"), "lend": ("lent", "lent"),
    "lose": ("lost", "lost"), "make": ("made", "made"), "mean": ("meant", "meant"),
    "meet": ("met", "met"), "oversee": ("oversaw", "overseen"), "pay": ("paid", "paid"),
    "put": ("put", "put"), "rebuild": ("rebuilt", "rebuilt"), "ride": ("rode", "ridden"),
    "rise": ("rose", "risen"), "run": ("ran", "run"), "see": ("saw", "seen"),
    "sell": ("sold", "sold"), "send": ("sent", "sent"), "set": ("set", "set"),
    "shut": ("shut", "shut"), "sit": ("sat", "sat"), "speak": ("spoke", "spoken"),
    "spend": ("spent", "spent"), "stand": ("stood", "stood"), "steal": ("stole", "stolen"),
    "strike": ("struck", "struck"), "take": ("took", "taken"), "teach": ("taught", "taught"),
    "tell": ("told", "told"), "think": ("thought", "thought"), "throw": ("threw", "thrown"),
    "undertake": ("undertook", "undertaken"), "understand": ("understood", "understood"),
    "uphold": ("upheld", "upheld"), "win": ("won", "won"), "write": ("wrote", "written"),
    "wear": ("wore", "worn"), "withdraw": ("withdrew", "withdrawn"), "overcome": ("overcame", "overcome"),
    "have": ("had", "had"), "sweep": ("swept", "swept"), "sleep": ("slept", "slept"),
}
_PAST_ONLY = {}
_PARTICIPLE_ONLY = {}
_PAST_OR_PARTICIPLE = {}
for _base, (_past, _part) in IRREGULAR.items():
    if _past == _part:
        _PAST_OR_PARTICIPLE[_past] = _base
    else:
        _PAST_ONLY[_past] = _base
        if _part != _base:
            _PARTICIPLE_ONLY[_part] = _base

# Common resume verbs (base form), used to spot present-tense "-s" forms and bare bases.
COMMON_VERBS = frozenset(
    """manage operate lead develop implement increase design build create coordinate supervise train
    maintain improve analyze prepare provide assist support perform conduct ensure handle monitor plan
    organize oversee direct deliver establish launch negotiate reduce resolve review schedule serve
    process install repair inspect test write teach work help use run sell make drive answer greet
    deploy collaborate communicate execute generate identify lead mentor produce recruit streamline
    track update administer assess audit compile configure construct consult evaluate facilitate
    forecast hire investigate present program research restructure revise secure solve spearhead
    achieve exceed grow expand""".split()
)

_ED_NOT_VERB = frozenset(
    "hundred kindred sacred naked wicked rugged ragged bed red shed sled wed embed indeed need seed speed "
    "breed greed tweed steed weed deed reed creed feed bleed med ted fred ed ned".split()
)
_ING_NOT_VERB = frozenset(
    "thing something anything nothing everything king ring string spring sing wing sibling during morning "
    "evening ceiling pudding wedding ping bling sterling".split()
)
_AUX_SKIP = NEGATION_PARTICLES | ADVERBS


def _lemma_regular(lw: str) -> str:
    return stem(lw)


def _lexical_pos(lw: str) -> Tuple[Optional[str], str]:
    """Context-free tag and lemma; None tag means "decide from suffix and context"."""
    if lw in PERSONAL_PRONOUNS:
        return PRON_PERSONAL, lw
    if lw in BE_FORMS:
        lemma = "be"
        if lw in ("was", "were"):
            return VERB_PAST, lemma
        if lw == "been":
            return VERB_PARTICIPLE, lemma
        if lw == "being":
            return VERB_PRESENT, lemma
        if lw == "be":
            return OTHER, lemma
        return VERB_PRESENT, lemma
    if lw in GET_FORMS:
        tag = {"got": VERB_PAST, "gotten": VERB_PARTICIPLE}.get(lw, VERB_PRESENT)
        return tag, "get"
    if lw in HAVE_FORMS:
        return (VERB_PAST if lw == "had" else VERB_PRESENT), "have"
    if lw in DO_FORMS:
        tag = {"did": VERB_PAST, "done": VERB_PARTICIPLE}.get(lw, VERB_PRESENT)
        return tag, "do"
    if lw in MODALS or lw in DETERMINERS or lw in PREPOSITIONS_CONJ:
        return OTHER, lw
    if lw in NEGATION_PARTICLES:
        return ADV, lw
    if lw in INTERJECTIONS:
        return INTJ, lw
    if lw in NUMBER_WORDS:
        return NUM, lw
    if lw in _PAST_ONLY:
        return VERB_PAST, _PAST_ONLY[lw]
    if lw in _PARTICIPLE_ONLY:
        return VERB_PARTICIPLE, _PARTICIPLE_ONLY[lw]
    if lw in ADVERBS:
        return ADV, lw
    if lw in ADJECTIVES:
        return ADJ, lw
    return None, lw


def _prev_content(tags: List[str], lowers: List[str], i: int, start: int) -> int:
    """Index of the nearest preceding token in the sentence that is not an adverb/negation; -1 if none."""
    j = i - 1
    while j >= start and (lowers[j] in _AUX_SKIP or tags[j] == ADV):
        j -= 1
    return j


def annotate(text: str) -> List[AnnotatedToken]:
    """Tokenize, segment, stem and tag ``text``.

    Sentences end at terminal punctuation and at line breaks; a bullet glyph
    at the start of a line is kept as a SYM token of the new sentence.
    """
    raw = list(tokenize(text))
    if not raw:
        return []

    sent_ids: List[int] = []
    sent = 0
    seen_in_sentence = False
    prev_terminal = False
    for surface, _, _, kind, line_start in raw:
        if seen_in_sentence and (line_start or prev_terminal) and not (prev_terminal and surface in TERMINAL):
            sent += 1
            seen_in_sentence = False
        sent_ids.append(sent)
        seen_in_sentence = True
        prev_terminal = kind == "punct" and surface in TERMINAL

    lowers = [t[0].lower().replace("’", "'") for t in raw]
    tags: List[str] = [OTHER] * len(raw)
    lemmas: List[str] = list(lowers)
    sent_start = 0
    for i, (surface, _, _, kind, _) in enumerate(raw):
        if i == 0 or sent_ids[i] != sent_ids[i - 1]:
            sent_start = i
        lw = lowers[i]
        if kind == "emo":
            tags[i] = SYM
            continue
        if kind == "num":
            tags[i] = NUM
            continue
        if kind == "punct":
            tags[i] = SYM
            continue
        if lw == "%":
            tags[i] = NUM
            continue
        tag, lemma = _lexical_pos(lw)
        lemmas[i] = lemma
        # the first word of a sentence may follow a bullet glyph
        k = sent_start
        while k < i and raw[k][3] == "punct" and raw[k][0] in BULLETS:
            k += 1
        sentence_initial = k == i
        if tag is not None and tag != PRON_PERSONAL:
            tags[i] = tag
            continue
        if tag == PRON_PERSONAL:
            tags[i] = tag
            continue
        if any(ch.isdigit() for ch in lw) and not any(ch.isalpha() for ch in lw):
            tags[i] = NUM
            continue

        prev = _prev_content(tags, lowers, i, sent_start)
        prev_lw = lowers[prev] if prev >= 0 else ""
        after_aux = prev_lw in BE_FORMS or prev_lw in GET_FORMS or prev_lw in HAVE_FORMS
        after_det = prev_lw in DETERMINERS
        if lw in _PAST_OR_PARTICIPLE:
            lemmas[i] = _PAST_OR_PARTICIPLE[lw]
            tags[i] = VERB_PARTICIPLE if after_aux else (ADJ if after_det else VERB_PAST)
            continue
        if lw.endswith("ed") and len(lw) > 3 and lw not in _ED_NOT_VERB and lw.isalpha():
            lemmas[i] = _lemma_regular(lw)
            tags[i] = VERB_PARTICIPLE if after_aux else (ADJ if after_det else VERB_PAST)
            continue
        if lw.endswith("ing") and len(lw) > 4 and lw not in _ING_NOT_VERB and lw.isalpha():
            lemmas[i] = _lemma_regular(lw)
            tags[i] = VERB_PRESENT
            continue
        if lw.endswith("ly") and len(lw) > 4 and lw not in _NOT_LY_ADVERBS:
            tags[i] = ADV
            continue
        if lw in COMMON_VERBS and (sentence_initial or prev_lw in MODALS or prev_lw in PERSONAL_PRONOUNS
                                   or prev_lw == "to"):
            tags[i] = VERB_PRESENT
            continue
        if lw.endswith("s") and not after_det:
            base = lw[:-2] if lw.endswith("es") and lw[:-2] in COMMON_VERBS else lw[:-1]
            if base in COMMON_VERBS:
                lemmas[i] = base
                tags[i] = VERB_PRESENT
                continue
        if lw.endswith(_ADJ_SUFFIXES) and len(lw) > 5:
            tags[i] = ADJ
            continue
        if surface[:1].isupper() and not sentence_initial and lw != "i":
            tags[i] = PROPN
            continue
        tags[i] = NOUN

    out = []
    for i, (surface, s, e, kind, _) in enumerate(raw):
        st = stem(lowers[i]) if kind == "word" else lowers[i]
        out.append(AnnotatedToken(surface, st, lemmas[i], tags[i], sent_ids[i], (s, e)))
    return out


def sentences(tokens: List[AnnotatedToken]) -> List[List[AnnotatedToken]]:
    groups: List[List[AnnotatedToken]] = []
    for tok in tokens:
        if not groups or groups[-1][0].sentence_index != tok.sentence_index:
            groups.append([])
        groups[-1].append(tok)
    return groups
