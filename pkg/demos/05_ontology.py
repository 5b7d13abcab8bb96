"""
From word clusters to an ontology draft
=======================================

Start from the built-in component catalogue, attach a word cluster to
one component as evidence, and serialize the result as Turtle.
"""

from pathlib import Path

from conceptminer import PosCategory
from conceptminer.annotate import load_corpus, read_manifest
from conceptminer.distsim import load_triples, pairwise_similarities
from conceptminer.graphcluster import build_graph, chinese_whispers
from conceptminer.keyness import (
    count_frequencies,
    merge_tables,
    read_stoplist,
    score,
    select_target_words,
)
from conceptminer.ontology import assign_cluster, edit_gloss, export_turtle, seed_components

data = Path(__file__).parent / "data"

# The catalogue ships with fourteen components of creativity, each with
# an id, a label, and a short gloss. Initially none has member words.
doc = seed_components()
for component in doc.components[:4]:
    print(f"  {component.id}: {component.label}")
print(f"  ... {len(doc.components)} components in all\n")

# Rebuild the noun clustering (see 03_clustering.py for the long form).
target = load_corpus(read_manifest(data / "target.tsv", "target"))
contrast = load_corpus(read_manifest(data / "contrast.tsv", "contrast"))
selected = select_target_words(
    score(merge_tables(count_frequencies(d) for d in target),
          merge_tables(count_frequencies(d) for d in contrast)),
    stoplist=read_stoplist(data / "stoplist.txt"))
nouns = [r.lemma for r in selected if r.pos == PosCategory.N]
pairs = pairwise_similarities([(w, PosCategory.N) for w in nouns],
                              load_triples(data / "triples.tsv"))
clustering = chinese_whispers(build_graph(pairs, PosCategory.N, nouns), seed=1)

# Attach the cluster containing "novelty" to the Originality component.
# Assignment records both the evidence (the cluster) and the resulting
# member words; documents are immutable, so each edit returns a new one.
cluster_id = next(cid for cid, members in clustering.clusters().items()
                  if "novelty" in members)
doc = assign_cluster(doc, "originality", clustering, cluster_id)
doc = edit_gloss(doc, "originality", four_ps=["Product"])
members = sorted(f"{lemma} ({pos.value})"
                 for lemma, pos in doc.component("originality").member_words)
print(f"assigned cluster {cluster_id} to 'originality':")
print(f"  members: {', '.join(members)}\n")

# The Turtle serialization is canonical: same document, same bytes.
turtle = export_turtle(doc)
start = turtle.index("onto:originality a onto:Component")
print(turtle[start:turtle.index("\n\n", start)])
