"""
Finding the words that mark a corpus
====================================

Score every lemma in the target corpus against a contrast corpus and
keep the ones that are significantly overrepresented.
"""

from pathlib import Path

from conceptminer.annotate import load_corpus, read_manifest
from conceptminer.keyness import (
    count_frequencies,
    merge_tables,
    read_stoplist,
    score,
    select_target_words,
)

data = Path(__file__).parent / "data"

# Each manifest lists documents with a little metadata; loading a corpus
# tokenizes, tags, and lemmatizes every document in one pass.
target = load_corpus(read_manifest(data / "target.tsv", "target"))
contrast = load_corpus(read_manifest(data / "contrast.tsv", "contrast"))

target_table = merge_tables(count_frequencies(doc) for doc in target)
contrast_table = merge_tables(count_frequencies(doc) for doc in contrast)
print(f"target corpus: {target_table.total} content tokens")
print(f"contrast corpus: {contrast_table.total} content tokens")

# score() compares observed against expected counts for every lemma that
# appears in either corpus; the filter keeps overrepresented words that
# clear the significance cutoff and a minimum frequency.
records = score(target_table, contrast_table)
stoplist = read_stoplist(data / "stoplist.txt")
selected = select_target_words(records, stoplist=stoplist)

print(f"\n{len(selected)} words selected:\n")
print(f"{'rank':>4}  {'lemma':<14} {'pos':<3} {'llr':>7} {'target':>6} {'contrast':>8}")
for rank, rec in enumerate(selected, start=1):
    print(f"{rank:>4}  {rec.lemma:<14} {rec.pos.value:<3} "
          f"{rec.llr:>7.2f} {rec.o_target:>6} {rec.o_contrast:>8}")
