"""Component ontology: curated clusters with names, glosses, and links.

An OntologyDocument is a value holding named components, each carrying a
gloss, optional Person/Process/Product/Press tags, member words gathered
from assigned clusters, and outbound links to external concept URIs. The
document serializes to Turtle in a canonical form (sorted subjects,
sorted predicates, sorted objects) so exports are byte-stable and
diff-able, and to an equivalent structured-data form. A seed document
ships with fourteen curated creativity components, memberships empty.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from urllib.parse import urlparse

from .annotate import PosCategory
from .graphcluster import Clustering

DEFAULT_BASE_URI = "http://purl.org/creativity/ontology"

FOUR_PS = ("Person", "Process", "Product", "Press")

# The inspection lens behind the tags: who creates, what they do, what
# comes out, and the setting it happens in.
FOUR_PS_DESCRIPTIONS = {
    "Person": "The individual that is creative",
    "Process": "What the creative individual does to be creative",
    "Product": "What is produced as a result of the creative process",
    "Press": "The environment in which creative activity takes place",
}

_SLUG = re.compile(r"^[a-z][a-z0-9-]*$")
_WORD_WITH_POS = re.compile(r"^(.+) \((N|V|J|R)\)$")


class UnknownIdError(LookupError):
    """A component or cluster id that is not in the document."""


@dataclass(frozen=True)
class ComponentDefinition:
    """One named dimension of the concept under analysis."""

    id: str
    label: str
    gloss: str = ""
    four_ps: frozenset[str] = frozenset()
    member_words: frozenset[tuple[str, PosCategory]] = frozenset()
    source_clusters: frozenset[str] = frozenset()
    external_links: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if not _SLUG.match(self.id):
            raise ValueError(f"component id must be a lowercase slug: {self.id!r}")
        if not self.label:
            raise ValueError("component label must be non-empty")
        bad = self.four_ps - set(FOUR_PS)
        if bad:
            raise ValueError(f"unknown perspective tags: {sorted(bad)}")


@dataclass(frozen=True)
class Provenance:
    """Where a curated document came from: run id, input digests, parameters."""

    run_id: str = ""
    input_digests: tuple[tuple[str, str], ...] = ()
    parameters: tuple[tuple[str, str], ...] = ()

    def is_empty(self) -> bool:
        return not (self.run_id or self.input_digests or self.parameters)


@dataclass(frozen=True)
class OntologyDocument:
    base_uri: str = DEFAULT_BASE_URI
    components: tuple[ComponentDefinition, ...] = ()
    provenance: Provenance = field(default_factory=Provenance)

    def __post_init__(self) -> None:
        parsed = urlparse(self.base_uri)
        if not parsed.scheme or not parsed.netloc:
            raise ValueError(f"base_uri must be absolute: {self.base_uri!r}")
        if "#" in self.base_uri:
            raise ValueError("base_uri must not carry a fragment")
        ids = [c.id for c in self.components]
        if len(ids) != len(set(ids)):
            raise ValueError("component ids must be unique")

    def component(self, component_id: str) -> ComponentDefinition:
        for c in self.components:
            if c.id == component_id:
                return c
        raise UnknownIdError(f"no component with id {component_id!r}")

    def with_component(self, updated: ComponentDefinition) -> "OntologyDocument":
        self.component(updated.id)
        return replace(self, components=tuple(
            updated if c.id == updated.id else c for c in self.components))

    def component_uri(self, component_id: str) -> str:
        return f"{self.base_uri}#{component_id}"


def slugify(label: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", label.lower()).strip("-")
    if not _SLUG.match(slug):
        raise ValueError(f"label does not reduce to a slug: {label!r}")
    return slug


# Label and two-part gloss for each seed component, memberships left to
# the analyst. Kept verbatim; do not reword.
_SEED: tuple[tuple[str, str], ...] = (
    ("Active Involvement and Persistence",
     "Being actively involved; reacting to and having a deliberate effect on "
     "the creative process. The tenacity to persist with the creative process "
     "throughout, even during problematic points."),
    ("Dealing with Uncertainty",
     "Coping with incomplete, missing, inconsistent, contradictory, ambiguous "
     "and/or uncertain information. Element of risk and chance - no guarantee "
     "that information problems will be resolved. Not relying on every step "
     "of the process to be specified in detail; perhaps even avoiding routine "
     "or pre-existing methods and solutions."),
    ("Domain Competence",
     "Domain-specific intelligence, knowledge, talent, skills, experience and "
     "expertise. Knowing a domain well enough to be equipped to recognise "
     "gaps, needs or problems that need solving and to generate, validate, "
     "develop and promote new ideas in that domain."),
    ("General Intellectual Ability",
     "General intelligence and IQ. Good mental capacity."),
    ("Generation of Results",
     "Working towards some end target, goal, or result. Producing something "
     "(tangible or intangible) that previously did not exist."),
    ("Independence and Freedom",
     "Working independently with autonomy over actions and decisions. Freedom "
     "to work without being bound to pre-existing solutions, processes or "
     "biases; perhaps challenging cultural or domain norms."),
    ("Intention and Emotional Involvement",
     "Personal and emotional investment, immersion, self-expression and "
     "involvement in the creative process. The intention and desire to be "
     "creative: creativity is its own reward, a positive process giving "
     "fulfilment and enjoyment."),
    ("Originality",
     "Novelty and originality; a new product, or doing something in a new "
     "way; seeing new links and relations between previously unassociated "
     "concepts. Results that are unpredictable, unexpected, surprising, "
     "unusual, out of the ordinary."),
    ("Progression and Development",
     "Movement, advancement, evolution and development during a process. "
     "Whilst progress may or may not be linear, and an actual end goal may be "
     "only loosely specified (if at all), the entire process should represent "
     "some progress in a particular domain or task."),
    ("Social Interaction and Communication",
     "Communicating and promoting work to others in a persuasive and positive "
     "manner. Mutual influence, feedback, sharing and collaboration between "
     "society and individual."),
    ("Spontaneity/Subconscious Processing",
     "No need to be in control of the whole process; thoughts and activities "
     "may inform the process subconsciously without being inaccessible for "
     "conscious analysis, or may receive less attention than others. Being "
     "able to react quickly and spontaneously when appropriate, without "
     "needing to spend too much time thinking about the options."),
    ("Thinking and Evaluation",
     "Consciously evaluating several options to recognise potential value in "
     "each and identify the best option, using reasoning and good judgement. "
     "Proactively selecting a decided choice from possible options, without "
     "allowing the process to stagnate under indecision."),
    ("Value",
     "Making a useful contribution that is valued by others and recognised "
     "as an achievement and influential advancement; perceived as special, "
     "\u2018not just something anybody would have done\u2019. The end product "
     "is relevant and appropriate to the domain being worked in."),
    ("Variety, Divergence and Experimentation",
     "Generating a variety of different ideas to compare and choose from, "
     "with the flexibility to be open to several perspectives and to "
     "experiment and try different options out without bias. Multi-tasking "
     "during the creative process."),
)


def seed_components(base_uri: str = DEFAULT_BASE_URI) -> OntologyDocument:
    """The fourteen curated components in draft state: no members yet."""
    components = tuple(ComponentDefinition(slugify(label), label, gloss)
                       for label, gloss in _SEED)
    return OntologyDocument(base_uri, components, Provenance())


def cluster_ref(pos: PosCategory, cluster_id: int) -> str:
    return f"{pos.value}:{cluster_id}"


def assign_cluster(doc: OntologyDocument, component_id: str,
                   clustering: Clustering, cluster_id: int) -> OntologyDocument:
    """Add a cluster's words to a component; assigning twice is a no-op.

    Membership is derived state: the union of all assigned clusters'
    words, each tagged with its graph's category. Cluster references are
    namespaced by category code since every per-category clustering
    numbers its clusters independently.
    """
    component = doc.component(component_id)
    clusters = clustering.clusters()
    if cluster_id not in clusters:
        raise UnknownIdError(f"no cluster {cluster_id} in the "
                             f"{clustering.graph.pos.value} clustering")
    pos = clustering.graph.pos
    ref = cluster_ref(pos, cluster_id)
    members = frozenset((lemma, pos) for lemma in clusters[cluster_id])
    updated = replace(component,
                      member_words=component.member_words | members,
                      source_clusters=component.source_clusters | {ref})
    return doc.with_component(updated)


def unassign(doc: OntologyDocument, component_id: str, ref: str,
             clusterings: dict[str, Clustering]) -> OntologyDocument:
    """Remove a cluster from a component and rederive its member words.

    Words contributed only by the removed cluster disappear; words shared
    with a still-assigned cluster stay. Needs the run's clusterings to
    resolve the remaining references.
    """
    component = doc.component(component_id)
    if ref not in component.source_clusters:
        raise UnknownIdError(f"cluster {ref!r} is not assigned to {component_id!r}")
    remaining = component.source_clusters - {ref}
    members: set[tuple[str, PosCategory]] = set()
    for other in remaining:
        pos_code, _, num = other.partition(":")
        clustering = clusterings.get(pos_code)
        if clustering is None:
            raise UnknownIdError(f"no clustering for category {pos_code!r}")
        cluster = clustering.clusters().get(int(num))
        if cluster is None:
            raise UnknownIdError(f"no cluster {other!r} in the run")
        members.update((lemma, PosCategory.from_code(pos_code)) for lemma in cluster)
    updated = replace(component, member_words=frozenset(members),
                      source_clusters=remaining)
    return doc.with_component(updated)


def link_external(doc: OntologyDocument, component_id: str,
                  concept_uri: str) -> OntologyDocument:
    """Attach an external concept URI; duplicates collapse by set semantics."""
    parsed = urlparse(concept_uri)
    if not parsed.scheme or not parsed.netloc:
        raise ValueError(f"not an absolute URI: {concept_uri!r}")
    component = doc.component(component_id)
    return doc.with_component(replace(
        component, external_links=component.external_links | {concept_uri}))


def edit_gloss(doc: OntologyDocument, component_id: str,
               gloss: str | None = None, four_ps=None) -> OntologyDocument:
    """Rewrite a component's gloss and/or its perspective tags."""
    component = doc.component(component_id)
    updated = component
    if gloss is not None:
        updated = replace(updated, gloss=gloss)
    if four_ps is not None:
        updated = replace(updated, four_ps=frozenset(four_ps))
    return doc.with_component(updated)


# --- Turtle serialization ---------------------------------------------------

_RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
_SKOS = "http://www.w3.org/2004/02/skos/core#"
_RDFS = "http://www.w3.org/2000/01/rdf-schema#"

_PN_LOCAL = re.compile(r"^[A-Za-z][A-Za-z0-9_-]*$")


def _escape_literal(text: str) -> str:
    return (text.replace("\\", "\\\\").replace('"', '\\"')
            .replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t"))


def export_turtle(doc: OntologyDocument) -> str:
    """Canonical Turtle: sorted subjects, `a` first, sorted predicates/objects.

    One subject per component plus the root concept; the component class
    URI appears only in object position. Provenance rides on the bare
    base URI as its own subject when present. Exporting, re-parsing, and
    exporting again is byte-identical.
    """
    base = doc.base_uri
    onto = base + "#"
    triples: list[tuple[str, str, tuple[str, object]]] = []
    root = onto + "Creativity"
    triples.append((root, _RDF_TYPE, ("uri", _SKOS + "Concept")))
    triples.append((root, _SKOS + "prefLabel", ("lit", "Creativity")))
    for c in doc.components:
        uri = onto + c.id
        triples.append((root, _SKOS + "narrower", ("uri", uri)))
        triples.append((uri, _RDF_TYPE, ("uri", onto + "Component")))
        triples.append((uri, _SKOS + "broader", ("uri", root)))
        triples.append((uri, _SKOS + "prefLabel", ("lit", c.label)))
        if c.gloss:
            triples.append((uri, _SKOS + "definition", ("lit", c.gloss)))
        for tag in sorted(c.four_ps):
            triples.append((uri, onto + "fourPs", ("lit", tag)))
        for lemma, pos in sorted(c.member_words):
            triples.append((uri, onto + "memberWord", ("lit", f"{lemma} ({pos.value})")))
        for ref in sorted(c.source_clusters):
            triples.append((uri, onto + "sourceCluster", ("lit", ref)))
        for link in sorted(c.external_links):
            triples.append((uri, _RDFS + "seeAlso", ("uri", link)))
    if not doc.provenance.is_empty():
        if doc.provenance.run_id:
            triples.append((base, onto + "runId", ("lit", doc.provenance.run_id)))
        for name, digest in sorted(doc.provenance.input_digests):
            triples.append((base, onto + "inputDigest", ("lit", f"{name}={digest}")))
        for key, value in sorted(doc.provenance.parameters):
            triples.append((base, onto + "parameter", ("lit", f"{key}={value}")))

    prefixes = {"onto": onto, "rdfs": _RDFS, "skos": _SKOS}

    def shorten(uri: str) -> str:
        for name, ns in prefixes.items():
            if uri.startswith(ns):
                local = uri[len(ns):]
                if _PN_LOCAL.match(local):
                    return f"{name}:{local}"
        return f"<{uri}>"

    def render_object(obj: tuple[str, object]) -> str:
        kind, value = obj
        if kind == "uri":
            return shorten(str(value))
        return f'"{_escape_literal(str(value))}"'

    by_subject: dict[str, dict[str, list]] = {}
    for s, p, o in triples:
        by_subject.setdefault(s, {}).setdefault(p, []).append(o)

    lines = [f"@prefix {name}: <{ns}> ." for name, ns in sorted(prefixes.items())]
    for subject in sorted(by_subject):
        lines.append("")
        predicates = by_subject[subject]
        ordered = sorted(predicates, key=lambda p: (p != _RDF_TYPE, p))
        parts = []
        for predicate in ordered:
            objects = sorted(predicates[predicate], key=lambda o: str(o[1]))
            rendered = ", ".join(render_object(o) for o in objects)
            name = "a" if predicate == _RDF_TYPE else shorten(predicate)
            parts.append(f"{name} {rendered}")
        head = shorten(subject)
        if len(parts) == 1:
            lines.append(f"{head} {parts[0]} .")
        else:
            lines.append(f"{head} {parts[0]} ;")
            for part in parts[1:-1]:
                lines.append(f"    {part} ;")
            lines.append(f"    {parts[-1]} .")
    return "\n".join(lines) + "\n"


class TurtleParseError(ValueError):
    pass


def _tokenize_turtle(text: str):
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "<":
            end = text.find(">", i)
            if end < 0:
                raise TurtleParseError("unterminated IRI")
            yield ("iri", text[i + 1:end])
            i = end + 1
            continue
        if c == '"':
            buf = []
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\\":
                    esc = text[j + 1]
                    simple = {'"': '"', "\\": "\\", "n": "\n", "t": "\t",
                              "r": "\r", "b": "\b", "f": "\f", "'": "'"}
                    if esc in simple:
                        buf.append(simple[esc])
                        j += 2
                    elif esc == "u":
                        buf.append(chr(int(text[j + 2:j + 6], 16)))
                        j += 6
                    elif esc == "U":
                        buf.append(chr(int(text[j + 2:j + 10], 16)))
                        j += 10
                    else:
                        raise TurtleParseError(f"bad escape: \\{esc}")
                else:
                    buf.append(text[j])
                    j += 1
            if j >= n:
                raise TurtleParseError("unterminated string literal")
            yield ("lit", "".join(buf))
            i = j + 1
            continue
        if c in ".;,":
            yield (c, c)
            i += 1
            continue
        j = i
        while j < n and text[j] not in " \t\r\n<\">;,":
            j += 1
        word = text[i:j]
        # A statement-final dot can hug the last bare token.
        while word.endswith(".") and not re.fullmatch(r"[+-]?\d+\.\d*", word):
            word = word[:-1]
            j -= 1
        yield ("word", word)
        i = j
    yield ("eof", "")


def _parse_triples(text: str) -> list[tuple[str, str, tuple[str, object]]]:
    tokens = list(_tokenize_turtle(text))
    prefixes: dict[str, str] = {}
    triples: list[tuple[str, str, tuple[str, object]]] = []
    pos = 0

    def peek():
        return tokens[pos]

    def take(expected=None):
        nonlocal pos
        kind, value = tokens[pos]
        if expected and kind != expected:
            raise TurtleParseError(f"expected {expected}, got {kind} {value!r}")
        pos += 1
        return kind, value

    def resolve(kind: str, value: str) -> str:
        if kind == "iri":
            return value
        if ":" not in value:
            raise TurtleParseError(f"not a prefixed name: {value!r}")
        name, _, local = value.partition(":")
        if name not in prefixes:
            raise TurtleParseError(f"undeclared prefix: {name!r}")
        return prefixes[name] + local

    def read_object() -> tuple[str, object]:
        kind, value = take()
        if kind == "iri":
            return ("uri", value)
        if kind == "lit":
            return ("lit", value)
        if kind == "word":
            if re.fullmatch(r"[+-]?\d+", value):
                return ("int", int(value))
            return ("uri", resolve(kind, value))
        raise TurtleParseError(f"unexpected object token: {kind} {value!r}")

    while peek()[0] != "eof":
        kind, value = take()
        if kind == "word" and value == "@prefix":
            _, name = take("word")
            if not name.endswith(":"):
                raise TurtleParseError(f"bad prefix declaration: {name!r}")
            _, iri = take("iri")
            prefixes[name[:-1]] = iri
            take(".")
            continue
        if kind not in ("iri", "word"):
            raise TurtleParseError(f"unexpected subject token: {kind} {value!r}")
        subject = resolve(kind, value)
        while True:
            pk, pv = take()
            if pk == "word" and pv == "a":
                predicate = _RDF_TYPE
            elif pk in ("iri", "word"):
                predicate = resolve(pk, pv)
            else:
                raise TurtleParseError(f"unexpected predicate token: {pk} {pv!r}")
            while True:
                triples.append((subject, predicate, read_object()))
                if peek() == (",", ","):
                    take()
                    continue
                break
            if peek() == (";", ";"):
                take()
                continue
            take(".")
            break
    return triples


def parse_turtle(text: str) -> OntologyDocument:
    """Rebuild a document from its Turtle export."""
    triples = _parse_triples(text)
    roots = [s for s, p, o in triples
             if p == _RDF_TYPE and o == ("uri", _SKOS + "Concept")
             and s.endswith("#Creativity")]
    if len(roots) != 1:
        raise TurtleParseError("expected exactly one root concept subject")
    base = roots[0][:-len("#Creativity")]
    onto = base + "#"
    component_uris = sorted(s for s, p, o in triples
                            if p == _RDF_TYPE and o == ("uri", onto + "Component"))
    objects: dict[str, dict[str, list]] = {}
    for s, p, o in triples:
        objects.setdefault(s, {}).setdefault(p, []).append(o)

    def literals(subject: str, predicate: str) -> list[str]:
        return [str(v) for kind, v in objects.get(subject, {}).get(predicate, [])
                if kind in ("lit", "int")]

    components = []
    for uri in component_uris:
        cid = uri[len(onto):]
        labels = literals(uri, _SKOS + "prefLabel")
        if len(labels) != 1:
            raise TurtleParseError(f"component {cid!r} needs exactly one label")
        glosses = literals(uri, _SKOS + "definition")
        members = set()
        for text_value in literals(uri, onto + "memberWord"):
            match = _WORD_WITH_POS.match(text_value)
            if not match:
                raise TurtleParseError(f"bad member word literal: {text_value!r}")
            members.add((match.group(1), PosCategory.from_code(match.group(2))))
        links = frozenset(str(v) for kind, v in
                          objects.get(uri, {}).get(_RDFS + "seeAlso", [])
                          if kind == "uri")
        components.append(ComponentDefinition(
            id=cid, label=labels[0],
            gloss=glosses[0] if glosses else "",
            four_ps=frozenset(literals(uri, onto + "fourPs")),
            member_words=frozenset(members),
            source_clusters=frozenset(literals(uri, onto + "sourceCluster")),
            external_links=links))
    run_ids = literals(base, onto + "runId")
    digests = []
    for item in literals(base, onto + "inputDigest"):
        name, _, value = item.partition("=")
        digests.append((name, value))
    parameters = []
    for item in literals(base, onto + "parameter"):
        key, _, value = item.partition("=")
        parameters.append((key, value))
    provenance = Provenance(run_ids[0] if run_ids else "",
                            tuple(sorted(digests)), tuple(sorted(parameters)))
    return OntologyDocument(base, tuple(components), provenance)


# --- structured-data serialization ------------------------------------------

def export_json(doc: OntologyDocument) -> str:
    payload = {
        "base_uri": doc.base_uri,
        "provenance": {
            "run_id": doc.provenance.run_id,
            "input_digests": [list(pair) for pair in sorted(doc.provenance.input_digests)],
            "parameters": [list(pair) for pair in sorted(doc.provenance.parameters)],
        },
        "components": [{
            "id": c.id,
            "label": c.label,
            "gloss": c.gloss,
            "four_ps": sorted(c.four_ps),
            "member_words": [[lemma, pos.value] for lemma, pos in sorted(c.member_words)],
            "source_clusters": sorted(c.source_clusters),
            "external_links": sorted(c.external_links),
        } for c in sorted(doc.components, key=lambda c: c.id)],
    }
    return json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def parse_json(text: str) -> OntologyDocument:
    payload = json.loads(text)
    components = tuple(ComponentDefinition(
        id=c["id"], label=c["label"], gloss=c.get("gloss", ""),
        four_ps=frozenset(c.get("four_ps", ())),
        member_words=frozenset((lemma, PosCategory.from_code(code))
                               for lemma, code in c.get("member_words", ())),
        source_clusters=frozenset(c.get("source_clusters", ())),
        external_links=frozenset(c.get("external_links", ())),
    ) for c in payload["components"])
    prov = payload.get("provenance", {})
    provenance = Provenance(prov.get("run_id", ""),
                            tuple(tuple(p) for p in prov.get("input_digests", ())),
                            tuple(tuple(p) for p in prov.get("parameters", ())))
    return OntologyDocument(payload["base_uri"], components, provenance)
