"""Rule-based tokenization, part-of-speech tagging, and lemmatization.

The tagger assigns one of the four major content categories (noun, verb,
adjective, adverb) using the embedded lexicon plus suffix heuristics, and
drops everything else. It exists so raw text can flow through the
pipeline end to end; accuracy is bounded by the lexicon, and any serious
corpus should arrive pre-annotated. Tag inventories from external
taggers are normalized through TagMap.
"""

from __future__ import annotations

import re

from .lexicon import FUNCTION_WORDS, IRREGULAR_LEMMAS, KNOWN_WORDS, POS_LEXICON

_SENTENCE_END = re.compile(r"(?<=[.!?])\s+(?=[A-Z\"'(\[])")
# Words keep internal hyphens and apostrophes: "self-report", "don't".
_TOKEN = re.compile(r"[A-Za-z]+(?:['’-][A-Za-z]+)*")

_VOWELS = set("aeiou")


def split_sentences(text: str) -> list[str]:
    """Split running text into sentences on terminal punctuation."""
    parts = []
    for block in text.split("\n\n"):
        block = " ".join(block.split())
        if not block:
            continue
        parts.extend(p for p in _SENTENCE_END.split(block) if p)
    return parts


def tokenize(sentence: str) -> list[str]:
    """Extract word tokens, discarding punctuation and numbers."""
    return _TOKEN.findall(sentence)


def _suffix_tag(word: str) -> str | None:
    # Order matters: adverb test first so "-ly" does not fall to noun.
    if len(word) > 4 and word.endswith("ly"):
        return "R"
    for suf in ("ness", "tion", "sion", "ment", "ance", "ence", "ity",
                "ship", "hood", "ism", "ist", "eer", "ogy", "graphy"):
        if len(word) > len(suf) + 2 and word.endswith(suf):
            return "N"
    for suf in ("ous", "ive", "able", "ible", "ful", "less", "ish",
                "ical", "ic", "al", "ary", "ant", "ent"):
        if len(word) > len(suf) + 2 and word.endswith(suf):
            return "J"
    for suf in ("ize", "ise", "ify", "ate"):
        if len(word) > len(suf) + 2 and word.endswith(suf):
            return "V"
    return None


def tag_word(word: str, prev_tag: str | None = None) -> str | None:
    """Assign a major-category code to one lowercased token.

    Returns None for function words and anything else judged to be a
    minor category. prev_tag gives one token of left context, enough to
    catch verbal -s and -ed forms after pronouns disguised as nouns.
    """
    if word in FUNCTION_WORDS:
        return None
    if len(word) == 1:
        return None
    tag = POS_LEXICON.get(word)
    if tag is not None:
        return tag
    # Inflected form of a known word: tag follows the stem.
    for form, stem_tag in _inflection_stems(word):
        stem = POS_LEXICON.get(form)
        if stem is not None and stem == stem_tag:
            return _inflected_tag(word, stem)
    guess = _suffix_tag(word)
    if guess is not None:
        return guess
    if word.endswith("ing") and len(word) > 5:
        return "V"
    if word.endswith("ed") and len(word) > 4:
        return "V"
    if word.endswith("s") and not word.endswith("ss") and len(word) > 3:
        return "N"
    return "N"


def _inflection_stems(word: str):
    """Candidate (stem, required stem tag) pairs for an inflected form."""
    out = []
    if word.endswith("ies") and len(word) > 4:
        out.append((word[:-3] + "y", "N"))
        out.append((word[:-3] + "y", "V"))
    if word.endswith("es") and len(word) > 3:
        out.append((word[:-2], "N"))
        out.append((word[:-2], "V"))
    if word.endswith("s") and not word.endswith("ss") and len(word) > 2:
        out.append((word[:-1], "N"))
        out.append((word[:-1], "V"))
    if word.endswith("ing") and len(word) > 4:
        out.append((word[:-3], "V"))
        out.append((word[:-3] + "e", "V"))
        if len(word) > 5 and word[-4] == word[-5]:
            out.append((word[:-4], "V"))
    if word.endswith("ed") and len(word) > 3:
        out.append((word[:-2], "V"))
        out.append((word[:-1], "V"))
        if len(word) > 4 and word[-3] == word[-4]:
            out.append((word[:-3], "V"))
    if word.endswith("er") and len(word) > 3:
        out.append((word[:-2], "J"))
        out.append((word[:-1], "J"))
    if word.endswith("est") and len(word) > 4:
        out.append((word[:-3], "J"))
        out.append((word[:-2], "J"))
    return out


def _inflected_tag(word: str, stem_tag: str) -> str:
    if stem_tag == "N":
        return "N"
    if stem_tag == "V":
        return "V"
    # Comparative and superlative forms of adjectives stay adjectives;
    # a plural -s on an adjective stem reads as a noun use.
    if stem_tag == "J":
        if word.endswith(("er", "est")):
            return "J"
        return "N"
    return stem_tag


def lemmatize(word: str, tag: str) -> str:
    """Reduce a lowercased word form to its dictionary form."""
    irregular = IRREGULAR_LEMMAS.get((word, tag))
    if irregular is not None:
        return irregular
    if tag == "N":
        return _strip_noun(word)
    if tag == "V":
        return _strip_verb(word)
    if tag in ("J", "R"):
        return _strip_grade(word)
    return word


def _strip_noun(word: str) -> str:
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("ses", "xes", "zes", "ches", "shes")) and len(word) > 4:
        return word[:-2]
    if word.endswith("s") and not word.endswith(("ss", "us", "is")) and len(word) > 3:
        return word[:-1]
    return word


def _strip_verb(word: str) -> str:
    for suffix, min_len in (("ing", 5), ("ed", 4)):
        if not word.endswith(suffix) or len(word) < min_len:
            continue
        stem = word[: -len(suffix)]
        if stem in KNOWN_WORDS:
            return stem
        if stem + "e" in KNOWN_WORDS:
            return stem + "e"
        if len(stem) > 2 and stem[-1] == stem[-2]:
            if stem[:-1] in KNOWN_WORDS:
                return stem[:-1]
        # Unknown stem: undouble a doubled consonant, restore -e after
        # a consonant cluster that needs it, else take the bare stem.
        if len(stem) > 2 and stem[-1] == stem[-2] and stem[-1] not in _VOWELS:
            return stem[:-1]
        if _wants_final_e(stem):
            return stem + "e"
        return stem
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("ses", "xes", "zes", "ches", "shes")) and len(word) > 4:
        return word[:-2]
    if word.endswith("s") and not word.endswith("ss") and len(word) > 3:
        return word[:-1]
    return word


def _wants_final_e(stem: str) -> bool:
    if len(stem) < 3:
        return False
    # creat -> create, describ -> describe, produc -> produce
    if stem[-1] in "cgsuv" and stem[-2] not in _VOWELS | {"r", "l", "n"}:
        return True
    if stem.endswith(("at", "iz", "is", "uc", "ib", "in", "ar", "ir")):
        return stem + "e" in KNOWN_WORDS or stem[-2:] in ("at", "iz", "uc", "ib")
    return False


def _strip_grade(word: str) -> str:
    if word.endswith("est") and len(word) > 5:
        stem = word[:-3]
    elif word.endswith("er") and len(word) > 4:
        stem = word[:-2]
    else:
        return word
    if stem in KNOWN_WORDS:
        return stem
    if stem + "e" in KNOWN_WORDS:
        return stem + "e"
    if stem.endswith("i") and stem[:-1] + "y" in KNOWN_WORDS:
        return stem[:-1] + "y"
    return word


class TagMap:
    """Maps an external tagset onto the four major-category codes.

    Tags that map to None are minor categories and their tokens are
    dropped. Unlisted tags are dropped too, so a map only has to name
    what it keeps.
    """

    def __init__(self, name: str, mapping: dict[str, str | None]):
        self.name = name
        self._mapping = dict(mapping)

    def major_category(self, tag: str) -> str | None:
        return self._mapping.get(tag)

    @classmethod
    def identity(cls) -> "TagMap":
        return cls("identity", {"N": "N", "V": "V", "J": "J", "R": "R"})

    @classmethod
    def penn(cls) -> "TagMap":
        m: dict[str, str | None] = {}
        for t in ("NN", "NNS", "NNP", "NNPS"):
            m[t] = "N"
        for t in ("VB", "VBD", "VBG", "VBN", "VBP", "VBZ"):
            m[t] = "V"
        for t in ("JJ", "JJR", "JJS"):
            m[t] = "J"
        for t in ("RB", "RBR", "RBS"):
            m[t] = "R"
        return cls("penn", m)

    @classmethod
    def claws(cls) -> "TagMap":
        # Prefix-style map for the CLAWS C5/C7 families: NN1, NN2, VVI,
        # AJ0, AV0 and the like. Resolved by leading letters.
        return _ClawsMap()

    @classmethod
    def named(cls, name: str) -> "TagMap":
        key = name.strip().lower()
        if key == "identity":
            return cls.identity()
        if key == "penn":
            return cls.penn()
        if key == "claws":
            return cls.claws()
        raise ValueError(f"unknown tag map: {name!r}")


class _ClawsMap(TagMap):
    def __init__(self) -> None:
        super().__init__("claws", {})

    def major_category(self, tag: str) -> str | None:
        t = tag.upper()
        if t.startswith(("NN", "NP")):
            return "N"
        if t.startswith("VV"):
            return "V"
        if t.startswith(("AJ", "JJ", "DA")):
            return "J"
        if t.startswith(("AV", "RR", "RG", "RL", "RT")):
            return "R"
        return None
