"""
Which words keep the same company
=================================

Compare words by the dependency contexts they share. Two words are
similar when the contexts they appear in overlap, weighted by how
strongly each context is associated with each word.
"""

from pathlib import Path

from conceptminer import PosCategory
from conceptminer.distsim import feature_vector, load_triples, pairwise_similarities

data = Path(__file__).parent / "data"
store = load_triples(data / "triples.tsv")

# A feature vector maps (relation, co-word) contexts to association
# weights; contexts that are not positively associated are dropped.
vec = feature_vector("idea", PosCategory.N, store)
print("contexts of 'idea':")
for (relation, co_word), weight in sorted(vec.features.items()):
    print(f"  {relation:<9} {co_word:<10} {weight:.3f}")

# Pairwise scores for a handful of nouns. Words from the same semantic
# neighbourhood share contexts and score high; unrelated words score 0
# and never show up.
nouns = [(w, PosCategory.N) for w in
         ("idea", "concept", "notion", "method", "process", "sketch")]
print("\nsimilar noun pairs:")
for (a, _), (b, _), sim in sorted(pairwise_similarities(nouns, store),
                                  key=lambda p: -p[2]):
    print(f"  {a:<8} ~ {b:<8} {sim:.3f}")
