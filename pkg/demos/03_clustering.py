"""Group similar words into sense clusters, then zoom into one word.

Builds the noun similarity graph for the demo corpus, partitions it by
label propagation, and cuts the ego network around one root word.
"""

from pathlib import Path

from conceptminer import PosCategory
from conceptminer.annotate import load_corpus, read_manifest
from conceptminer.distsim import load_triples, pairwise_similarities
from conceptminer.graphcluster import build_graph, chinese_whispers, ego_network
from conceptminer.keyness import (
    count_frequencies,
    merge_tables,
    read_stoplist,
    score,
    select_target_words,
)

data = Path(__file__).parent / "data"

target = load_corpus(read_manifest(data / "target.tsv", "target"))
contrast = load_corpus(read_manifest(data / "contrast.tsv", "contrast"))
selected = select_target_words(
    score(merge_tables(count_frequencies(d) for d in target),
          merge_tables(count_frequencies(d) for d in contrast)),
    stoplist=read_stoplist(data / "stoplist.txt"))

# Keep the selected nouns and connect every pair that shares contexts.
store = load_triples(data / "triples.tsv")
nouns = [r.lemma for r in selected if r.pos == PosCategory.N]
pairs = pairwise_similarities([(w, PosCategory.N) for w in nouns], store)
graph = build_graph(pairs, PosCategory.N, nouns)
print(f"noun graph: {len(graph.nodes)} nodes, {len(graph.edges)} edges")

# Label propagation with a fixed seed; the same graph and seed always
# produce the same partition.
clustering = chinese_whispers(graph, seed=1)
print(f"converged after {clustering.iterations_run} iterations\n")
for cluster_id, members in clustering.clusters().items():
    print(f"  cluster {cluster_id}: {', '.join(members)}")

# The ego network keeps the neighbourhood of one word, discarding edges
# below the weight threshold. Raising the threshold shrinks the ego.
for threshold in (0.0, 0.3, 0.5):
    ego = ego_network(graph, "idea", threshold, radius=1)
    print(f"\nego of 'idea' at threshold {threshold}: {sorted(ego.members)}")
