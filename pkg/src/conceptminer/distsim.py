"""Distributional similarity over grammatical-relation contexts.

Words are described by the contexts they occur in: (relation, co-word)
features weighted by a log-ratio association score. The similarity of
two same-category words is the weight their feature lists share, divided
by the total weight of both lists. Context counts come from a reference
corpus as (word, relation, co_word, count) triples restricted to the
subject, object, and modifier relations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain

from .annotate import PosCategory

RELATIONS = ("subject", "object", "modifier")


class TripleParseError(ValueError):
    """A triple-file line did not have the expected shape."""

    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class TripleStore:
    """Aggregated triple counts with the marginals the weighting needs."""

    def __init__(self) -> None:
        self.counts: dict[tuple[str, str, str], int] = {}
        self.contexts: dict[str, dict[tuple[str, str], int]] = {}
        self.by_word_rel: dict[tuple[str, str], int] = {}
        self.by_rel_co: dict[tuple[str, str], int] = {}
        self.by_rel: dict[str, int] = {}

    def add(self, word: str, relation: str, co_word: str, count: int) -> None:
        if relation not in RELATIONS:
            raise ValueError(f"unknown relation: {relation!r}")
        if count < 1:
            raise ValueError(f"count must be positive: {count}")
        word = word.lower()
        co_word = co_word.lower()
        key = (word, relation, co_word)
        self.counts[key] = self.counts.get(key, 0) + count
        ctx = self.contexts.setdefault(word, {})
        ctx[(relation, co_word)] = ctx.get((relation, co_word), 0) + count
        self.by_word_rel[(word, relation)] = self.by_word_rel.get((word, relation), 0) + count
        self.by_rel_co[(relation, co_word)] = self.by_rel_co.get((relation, co_word), 0) + count
        self.by_rel[relation] = self.by_rel.get(relation, 0) + count

    def __len__(self) -> int:
        return len(self.counts)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.contexts

    @classmethod
    def from_triples(cls, triples) -> "TripleStore":
        store = cls()
        for word, relation, co_word, count in triples:
            store.add(word, relation, co_word, count)
        return store


def load_triples(path: str) -> TripleStore:
    """Read a `word<TAB>relation<TAB>co_word<TAB>count` file."""
    store = TripleStore()
    with open(path, encoding="utf-8") as fh:
        for no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise TripleParseError(path, no,
                                       f"expected 4 tab-separated fields, got {len(parts)}")
            word, relation, co_word, count_text = parts
            if relation not in RELATIONS:
                raise TripleParseError(path, no, f"unknown relation: {relation!r}")
            try:
                count = int(count_text)
            except ValueError:
                raise TripleParseError(path, no, f"bad count: {count_text!r}") from None
            if count < 1:
                raise TripleParseError(path, no, f"count must be positive: {count}")
            if not word.strip() or not co_word.strip():
                raise TripleParseError(path, no, "empty word field")
            store.add(word.strip(), relation, co_word.strip(), count)
    return store


def mutual_information(word: str, relation: str, co_word: str,
                       store: TripleStore) -> float:
    """Association of a word with one of its contexts.

        ln( c(w,r,w') * c(*,r,*) / (c(w,r,*) * c(*,r,w')) )
    """
    word = word.lower()
    co_word = co_word.lower()
    count = store.counts.get((word, relation, co_word))
    if count is None:
        raise ValueError(f"triple not in store: ({word}, {relation}, {co_word})")
    num = count * store.by_rel[relation]
    den = store.by_word_rel[(word, relation)] * store.by_rel_co[(relation, co_word)]
    return math.log(num / den)


@dataclass(frozen=True)
class FeatureVector:
    """Positively associated contexts of one (lemma, category) word."""

    word: tuple[str, PosCategory]
    features: dict[tuple[str, str], float]

    def __post_init__(self) -> None:
        for f, weight in self.features.items():
            if weight <= 0:
                raise ValueError(f"non-positive feature weight for {f}: {weight}")

    def total_weight(self) -> float:
        return math.fsum(self.features.values())


def feature_vector(lemma: str, pos: PosCategory, store: TripleStore) -> FeatureVector:
    """Build the weighted context list for one word.

    The triple file carries lemmas without category tags, so the vector
    uses every triple whose head word equals the lemma; the category
    restriction applies between compared words, not inside the store.
    Features whose association is not strictly positive are dropped,
    decided by exact integer comparison so borderline contexts never
    flicker with rounding.
    """
    lemma = lemma.lower()
    features: dict[tuple[str, str], float] = {}
    for (relation, co_word), count in store.contexts.get(lemma, {}).items():
        num = count * store.by_rel[relation]
        den = store.by_word_rel[(lemma, relation)] * store.by_rel_co[(relation, co_word)]
        if num <= den:
            continue
        features[(relation, co_word)] = math.log(num / den)
    return FeatureVector((lemma, pos), features)


def lin_similarity(a: FeatureVector, b: FeatureVector) -> float:
    """Shared-context weight over total context weight, in [0, 1].

    The numerator sums both words' weights over the features they share;
    the denominator sums every weight of both words. Both sums run
    through fsum over the raw weights, which makes the result exactly 1.0
    for identical vectors, symmetric, and never above 1.
    """
    if a.word[1] != b.word[1]:
        raise ValueError(f"cannot compare across categories: "
                         f"{a.word[1].value} vs {b.word[1].value}")
    if not a.features or not b.features:
        return 0.0
    shared = sorted(set(a.features) & set(b.features))
    if not shared:
        return 0.0
    num = math.fsum(chain.from_iterable((a.features[f], b.features[f]) for f in shared))
    den = math.fsum(chain(a.features.values(), b.features.values()))
    return num / den


def pairwise_similarities(words, store: TripleStore,
                          min_sim: float = 0.0) -> list[tuple]:
    """Score every unordered same-category pair of the given words.

    Yields (word_a, word_b, score) with score strictly greater than
    min_sim, word_a lexicographically before word_b, output sorted by
    (category, word_a, word_b). Words without any stored context have
    empty vectors and therefore produce no pairs.
    """
    unique = sorted(set(words), key=lambda w: (w[1].value, w[0]))
    vectors = {}
    for lemma, pos in unique:
        vectors[(lemma, pos)] = feature_vector(lemma, pos, store)
    pairs = []
    by_pos: dict[PosCategory, list] = {}
    for lemma, pos in unique:
        by_pos.setdefault(pos, []).append(lemma)
    for pos in sorted(by_pos, key=lambda p: p.value):
        lemmas = by_pos[pos]
        for i, lemma_a in enumerate(lemmas):
            va = vectors[(lemma_a, pos)]
            for lemma_b in lemmas[i + 1:]:
                sim = lin_similarity(va, vectors[(lemma_b, pos)])
                if sim > min_sim:
                    pairs.append(((lemma_a, pos), (lemma_b, pos), sim))
    return pairs
