"""Similarity graphs, Chinese Whispers clustering, and ego networks.

One graph per word category: nodes are the selected target words, edges
carry positive similarity scores. Chinese Whispers assigns every node
the label that is strongest among its neighbors, iterating in seeded
random order until nothing changes; clusters are the surviving labels.
Ego networks cut a graph down to what sits within a few hops of a root
word once weak edges are discarded.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from math import fsum
from xml.sax.saxutils import escape, quoteattr

from .annotate import PosCategory

Edge = tuple[str, str]


def edge_key(a: str, b: str) -> Edge:
    return (a, b) if a <= b else (b, a)


@dataclass
class SimilarityGraph:
    pos: PosCategory
    nodes: set[str] = field(default_factory=set)
    edges: dict[Edge, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (a, b), weight in self.edges.items():
            if a == b:
                raise ValueError(f"self-loop on {a!r}")
            if (a, b) != edge_key(a, b):
                raise ValueError(f"edge key not normalized: {(a, b)}")
            if not weight > 0:
                raise ValueError(f"edge weight must be positive: {(a, b)} -> {weight}")
            if a not in self.nodes or b not in self.nodes:
                raise ValueError(f"edge endpoint outside node set: {(a, b)}")

    def adjacency(self) -> dict[str, list[tuple[str, float]]]:
        """Neighbor lists in sorted order, for deterministic traversal."""
        adj: dict[str, list[tuple[str, float]]] = {n: [] for n in sorted(self.nodes)}
        for (a, b), weight in sorted(self.edges.items()):
            adj[a].append((b, weight))
            adj[b].append((a, weight))
        return adj

    def max_weight(self) -> float:
        return max(self.edges.values(), default=0.0)


def build_graph(pairs, pos: PosCategory, selected_words=()) -> SimilarityGraph:
    """Assemble the per-category graph from scored pairs.

    Nodes are every word seen in a pair plus any extra selected words,
    which sit isolated if nothing paired with them. Only strictly
    positive scores become edges.
    """
    nodes: set[str] = set(selected_words)
    edges: dict[Edge, float] = {}
    for (lemma_a, pos_a), (lemma_b, pos_b), score in pairs:
        if pos_a != pos or pos_b != pos:
            raise ValueError(f"pair category {pos_a.value}/{pos_b.value} does not "
                             f"match graph category {pos.value}")
        nodes.add(lemma_a)
        nodes.add(lemma_b)
        if lemma_a == lemma_b:
            raise ValueError(f"self-pair on {lemma_a!r}")
        if score > 0:
            edges[edge_key(lemma_a, lemma_b)] = score
    return SimilarityGraph(pos, nodes, edges)


@dataclass
class Clustering:
    graph: SimilarityGraph
    labels: dict[str, int]
    seed: int
    iterations_run: int
    converged: bool

    def clusters(self) -> dict[int, list[str]]:
        """Members per cluster id, each list sorted."""
        out: dict[int, list[str]] = {}
        for node in sorted(self.labels):
            out.setdefault(self.labels[node], []).append(node)
        return dict(sorted(out.items()))


def chinese_whispers(graph: SimilarityGraph, seed: int,
                     max_iterations: int = 100,
                     random_ties: bool = False) -> Clustering:
    """Label-propagation clustering, deterministic for a fixed seed.

    Every node starts with a unique label (its index in sorted node
    order). Each iteration visits all nodes in a fresh seeded-random
    order; a node adopts the label with the largest total edge weight
    among its neighbors, reading labels as they change within the
    iteration. Ties go to the smallest label id, or to a seeded-random
    choice among the tied labels when random_ties is set. Stops when an
    iteration changes nothing or the iteration budget runs out.
    """
    if max_iterations < 1:
        raise ValueError("max_iterations must be at least 1")
    nodes = sorted(graph.nodes)
    labels = {node: i for i, node in enumerate(nodes)}
    adjacency = graph.adjacency()
    rng = random.Random(seed)
    order = list(nodes)
    iterations_run = 0
    converged = False
    while iterations_run < max_iterations:
        iterations_run += 1
        rng.shuffle(order)
        changed = False
        for node in order:
            neighbors = adjacency[node]
            if not neighbors:
                continue
            weight_by_label: dict[int, list[float]] = {}
            for other, weight in neighbors:
                weight_by_label.setdefault(labels[other], []).append(weight)
            totals = {label: fsum(weights)
                      for label, weights in weight_by_label.items()}
            best = max(totals.values())
            tied = sorted(label for label, total in totals.items() if total == best)
            winner = rng.choice(tied) if random_ties and len(tied) > 1 else tied[0]
            if winner != labels[node]:
                labels[node] = winner
                changed = True
        if not changed:
            converged = True
            break
    return Clustering(graph, labels, seed, iterations_run, converged)


@dataclass
class EgoNetwork:
    pos: PosCategory
    root: str
    threshold: float
    members: frozenset[str]
    edges: dict[Edge, float]


def ego_network(graph: SimilarityGraph, root: str, threshold: float,
                radius: int = 1) -> EgoNetwork:
    """Cut the graph to what the root reaches once weak edges are gone.

    Edges below the threshold are discarded (boundary kept), then
    members are everything within `radius` hops of the root. All
    surviving edges between members are retained, including those
    between two boundary members.
    """
    if root not in graph.nodes:
        raise ValueError(f"root {root!r} not in graph")
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    if radius < 0:
        raise ValueError("radius must be non-negative")
    kept = {pair: w for pair, w in graph.edges.items() if w >= threshold}
    adjacency: dict[str, list[str]] = {}
    for (a, b) in kept:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    members = {root}
    frontier = [root]
    for _ in range(radius):
        next_frontier = []
        for node in frontier:
            for other in adjacency.get(node, ()):
                if other not in members:
                    members.add(other)
                    next_frontier.append(other)
        if not next_frontier:
            break
        frontier = next_frontier
    edges = {pair: w for pair, w in kept.items()
             if pair[0] in members and pair[1] in members}
    return EgoNetwork(graph.pos, root, threshold, frozenset(members), edges)


def top_k_roots(records, k: int = 20) -> list[str]:
    """Lemmas of the k highest-ranked records; all of them if k is larger."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return [r.lemma for r in records[:k]]


# Fill colors cycled over cluster ids in DOT output.
_PALETTE = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
            "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f")


def export_graph(obj, fmt: str) -> str:
    """Serialize a graph, a clustering, or an ego network.

    Formats: dot (edge weights to 3 decimals as labels, cluster fill
    colors when a clustering is given), graphml (weight and cluster
    attributes), json (full structure; the json route round-trips).
    """
    if isinstance(obj, Clustering):
        graph, labels = obj.graph, obj.labels
        extra = {"seed": obj.seed, "iterations": obj.iterations_run,
                 "converged": obj.converged}
    elif isinstance(obj, EgoNetwork):
        graph = SimilarityGraph(obj.pos, set(obj.members), dict(obj.edges))
        labels = None
        extra = {"root": obj.root, "threshold": obj.threshold}
    elif isinstance(obj, SimilarityGraph):
        graph, labels, extra = obj, None, {}
    else:
        raise TypeError(f"cannot export {type(obj).__name__}")
    if fmt == "dot":
        return _to_dot(graph, labels, extra.get("root"))
    if fmt == "graphml":
        return _to_graphml(graph, labels)
    if fmt == "json":
        return _to_json(graph, labels, extra)
    raise ValueError(f"unknown export format: {fmt!r}")


def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dot(graph: SimilarityGraph, labels, root=None) -> str:
    lines = [f"graph {_dot_quote(graph.pos.value)} {{"]
    lines.append("  node [style=filled, fillcolor=white];")
    color_of = {}
    if labels:
        for i, cluster in enumerate(sorted(set(labels.values()))):
            color_of[cluster] = _PALETTE[i % len(_PALETTE)]
    for node in sorted(graph.nodes):
        attrs = []
        if labels and node in labels:
            attrs.append(f'fillcolor="{color_of[labels[node]]}"')
            attrs.append(f"cluster={labels[node]}")
        if node == root:
            attrs.append("shape=doublecircle")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_dot_quote(node)}{suffix};")
    for (a, b), weight in sorted(graph.edges.items()):
        lines.append(f"  {_dot_quote(a)} -- {_dot_quote(b)} "
                     f'[weight={weight:.3f}, label="{weight:.3f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _to_graphml(graph: SimilarityGraph, labels) -> str:
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
             '  <key id="w" for="edge" attr.name="weight" attr.type="double"/>',
             '  <key id="c" for="node" attr.name="cluster" attr.type="int"/>',
             f'  <graph id={quoteattr(graph.pos.value)} edgedefault="undirected">']
    for node in sorted(graph.nodes):
        if labels and node in labels:
            lines.append(f"    <node id={quoteattr(node)}>"
                         f'<data key="c">{labels[node]}</data></node>')
        else:
            lines.append(f"    <node id={quoteattr(node)}/>")
    for i, ((a, b), weight) in enumerate(sorted(graph.edges.items())):
        lines.append(f'    <edge id="e{i}" source={quoteattr(a)} target={quoteattr(b)}>'
                     f'<data key="w">{weight!r}</data></edge>')
    lines.append("  </graph>")
    lines.append("</graphml>")
    return "\n".join(lines) + "\n"


def _to_json(graph: SimilarityGraph, labels, extra: dict) -> str:
    payload: dict = {"pos": graph.pos.value,
                     "nodes": sorted(graph.nodes),
                     "edges": [{"a": a, "b": b, "w": w}
                               for (a, b), w in sorted(graph.edges.items())]}
    if labels is not None:
        payload["labels"] = {node: labels[node] for node in sorted(labels)}
    payload.update(extra)
    return json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def parse_graph_json(text: str) -> tuple[SimilarityGraph, dict[str, int] | None]:
    """Read a json export back into a graph plus optional cluster labels."""
    payload = json.loads(text)
    pos = PosCategory.from_code(payload["pos"])
    nodes = set(payload["nodes"])
    edges = {edge_key(e["a"], e["b"]): e["w"] for e in payload["edges"]}
    labels = payload.get("labels")
    if labels is not None:
        labels = {node: int(cluster) for node, cluster in labels.items()}
    return SimilarityGraph(pos, nodes, edges), labels


def parse_clustering_json(text: str) -> Clustering:
    """Read a clustering export, run facts included, back into a value."""
    graph, labels = parse_graph_json(text)
    if labels is None:
        raise ValueError("not a clustering export: no labels present")
    payload = json.loads(text)
    return Clustering(graph, labels, seed=int(payload.get("seed", 0)),
                      iterations_run=int(payload.get("iterations", 0)),
                      converged=bool(payload.get("converged", True)))
