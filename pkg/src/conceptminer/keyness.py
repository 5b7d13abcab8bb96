"""Log-likelihood keyness: frequency profiles, scoring, and target-word selection.

Given frequency tables for a target corpus and a contrast corpus, each
(lemma, category) item is scored with the log-likelihood ratio of its
observed counts against the expected counts under a homogeneity
assumption. High-scoring items over-represented in the target corpus are
the "target words" handed to the similarity stage.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .annotate import AnnotatedToken, PosCategory

# Critical value for p = 0.001 at one degree of freedom; items scoring
# at or above it are retained.
DEFAULT_LLR_THRESHOLD = 10.83
DEFAULT_MIN_COUNT = 5

_WORDLIKE = re.compile(r"[^\W\d_]+(?:['’-][^\W\d_]+)*")


@dataclass(frozen=True)
class FrequencyTable:
    """Per-(lemma, category) counts for one corpus."""

    counts: dict[tuple[str, PosCategory], int]
    total: int

    def __post_init__(self) -> None:
        if self.total != sum(self.counts.values()):
            raise ValueError("total does not match summed counts")


@dataclass(frozen=True)
class KeynessRecord:
    """Observed/expected counts and score for one (lemma, category) item."""

    lemma: str
    pos: PosCategory
    o_target: int
    o_contrast: int
    e_target: float
    e_contrast: float
    llr: float
    overrepresented: bool

    def __post_init__(self) -> None:
        if self.overrepresented != (self.o_target > self.e_target):
            raise ValueError("overrepresented flag contradicts counts")


def count_frequencies(tokens) -> FrequencyTable:
    """Tally a token stream into a frequency table.

    The same lemma under different categories counts separately ("a good
    novel" and "a novel idea" are different items).
    """
    counts: dict[tuple[str, PosCategory], int] = {}
    total = 0
    for token in tokens:
        key = (token.lemma, token.pos)
        counts[key] = counts.get(key, 0) + 1
        total += 1
    return FrequencyTable(counts, total)


def merge_tables(tables) -> FrequencyTable:
    """Combine per-document tables; merging is associative."""
    counts: dict[tuple[str, PosCategory], int] = {}
    total = 0
    for table in tables:
        for key, n in table.counts.items():
            counts[key] = counts.get(key, 0) + n
        total += table.total
    return FrequencyTable(counts, total)


def compute_llr(o_cc: int, n_cc: int, o_nc: int, n_nc: int) -> tuple[float, float, float]:
    """Expected counts and log-likelihood ratio for one contingency row.

    e_cc = n_cc * (o_cc + o_nc) / (n_cc + n_nc), e_nc analogously, and

        llr = o_cc * ln(o_cc / e_cc) + o_nc * ln(o_nc / e_nc)

    with a zero observed count contributing zero. Each log argument is a
    ratio of exact integer products; its offset from 1 is taken in
    integer arithmetic and fed through log1p, which keeps the score
    accurate when the two corpora are nearly proportional and makes it
    exactly 0.0 when they are proportional. Clamped at 0 against
    round-off in the final sum.
    """
    if n_cc <= 0 or n_nc <= 0:
        raise ValueError("corpus totals must be positive")
    if not (0 <= o_cc <= n_cc) or not (0 <= o_nc <= n_nc):
        raise ValueError("observed counts must lie within their corpus totals")
    if o_cc + o_nc == 0:
        raise ValueError("at least one observed count must be positive")
    both = o_cc + o_nc
    grand = n_cc + n_nc
    e_cc = (n_cc * both) / grand
    e_nc = (n_nc * both) / grand
    llr = 0.0
    for observed, corpus in ((o_cc, n_cc), (o_nc, n_nc)):
        if observed == 0:
            continue
        num = observed * grand
        den = corpus * both
        offset = (num - den) / den
        if -0.5 < offset < 1.0:
            llr += observed * math.log1p(offset)
        else:
            llr += observed * math.log(num / den)
    return e_cc, e_nc, max(0.0, llr)


def score(target: FrequencyTable, contrast: FrequencyTable) -> list[KeynessRecord]:
    """Score every item seen in either corpus.

    Returns records in no particular order; ranking happens in
    select_target_words.
    """
    if target.total <= 0 or contrast.total <= 0:
        raise ValueError("both corpora must contain at least one token")
    records = []
    vocabulary = set(target.counts) | set(contrast.counts)
    for lemma, pos in sorted(vocabulary, key=lambda k: (k[0], k[1].value)):
        o_t = target.counts.get((lemma, pos), 0)
        o_c = contrast.counts.get((lemma, pos), 0)
        e_t, e_c, llr = compute_llr(o_t, target.total, o_c, contrast.total)
        records.append(KeynessRecord(lemma, pos, o_t, o_c, e_t, e_c, llr,
                                     o_t > e_t))
    return records


def select_target_words(records, llr_threshold: float = DEFAULT_LLR_THRESHOLD,
                        min_count: int = DEFAULT_MIN_COUNT,
                        stoplist=frozenset(),
                        proper_nouns=frozenset()) -> list[KeynessRecord]:
    """Filter scored records down to the salient target words.

    A record survives when its score reaches the threshold, it occurs at
    least min_count times in the target corpus, it is over-represented
    there, its lemma looks like a word (letters with internal hyphens or
    apostrophes only), and it is on neither stop set. Output is sorted by
    score descending, ties by (lemma, category code).
    """
    kept = []
    for r in records:
        if r.llr < llr_threshold:
            continue
        if r.o_target < min_count:
            continue
        if not r.overrepresented:
            continue
        if not _WORDLIKE.fullmatch(r.lemma):
            continue
        if r.lemma in stoplist or r.lemma in proper_nouns:
            continue
        kept.append(r)
    kept.sort(key=lambda r: (-r.llr, r.lemma, r.pos.value))
    return kept


def read_stoplist(path: str) -> frozenset[str]:
    """One lowercase lemma per line; `#` starts a comment."""
    entries = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.split("#", 1)[0].strip()
            if word:
                entries.add(word.lower())
    return frozenset(entries)


REPORT_COLUMNS = ("rank", "lemma", "pos", "llr",
                  "o_target", "e_target", "o_contrast", "e_contrast")


def emit_keyness_report(records, top_k: int | None = None) -> str:
    """Render ranked records as a TSV report, highest score first."""
    rows = [("\t".join(REPORT_COLUMNS))]
    selected = records if top_k is None else records[:top_k]
    for rank, r in enumerate(selected, start=1):
        rows.append(f"{rank}\t{r.lemma}\t{r.pos.value}\t{r.llr:.2f}"
                    f"\t{r.o_target}\t{r.e_target:.4f}"
                    f"\t{r.o_contrast}\t{r.e_contrast:.4f}")
    return "\n".join(rows) + "\n"


def write_keyness_report(records, path: str, top_k: int | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_keyness_report(records, top_k))


def read_keyness_report(path: str) -> list[KeynessRecord]:
    """Load a report written by write_keyness_report.

    Expected counts are stored rounded, so the overrepresented flag is
    recomputed from the rounded values; ranking order is preserved.
    """
    records = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split("\t")
        if tuple(header) != REPORT_COLUMNS:
            raise ValueError(f"{path}: not a keyness report (bad header)")
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            (_, lemma, pos, llr, o_t, e_t, o_c, e_c) = line.split("\t")
            records.append(KeynessRecord(lemma, PosCategory.from_code(pos),
                                         int(o_t), int(o_c),
                                         float(e_t), float(e_c), float(llr),
                                         int(o_t) > float(e_t)))
    return records
