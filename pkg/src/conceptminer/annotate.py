"""Document ingestion: annotated token streams, corpus screening, profiling.

Two input routes produce the same thing, a stream of lemmatized tokens
restricted to the four major content categories (noun, verb, adjective,
adverb):

* raw_text mode runs the built-in tokenizer, tagger, and lemmatizer;
* pre_annotated mode reads the vertical format written by an external
  annotation tool, one `surface<TAB>lemma<TAB>tag` line per token, blank
  line between sentences, `#` comment lines ignored.

Tokens whose tag does not map onto a major category are dropped. Lemmas
are lowercased on the way in.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum

from . import tagger
from .tagger import TagMap


class PosCategory(str, Enum):
    """The four major content-word categories; everything else is dropped."""

    N = "N"
    V = "V"
    J = "J"
    R = "R"

    __str__ = str.__str__

    @classmethod
    def from_code(cls, code: str) -> "PosCategory":
        try:
            return cls(code)
        except ValueError:
            raise ValueError(f"not a major category code: {code!r}") from None


MAJOR_CATEGORIES = (PosCategory.N, PosCategory.V, PosCategory.J, PosCategory.R)


@dataclass(frozen=True)
class AnnotatedToken:
    """One content word as it left annotation."""

    surface: str
    """The form as written, capitalization preserved."""

    lemma: str
    """Lowercase dictionary form."""

    pos: PosCategory
    """Major category of the token in context."""

    sentence_index: int = 0
    token_index: int = 0
    """Position within the document; the pair is unique per document."""

    def __post_init__(self) -> None:
        if not self.lemma or self.lemma != self.lemma.lower():
            raise ValueError(f"lemma must be non-empty lowercase: {self.lemma!r}")


@dataclass(frozen=True)
class DocumentEntry:
    """One manifest row pointing at a document plus its metadata."""

    path: str
    year: int | None = None
    disciplines: tuple[str, ...] = ()
    citation_count: int | None = None


@dataclass(frozen=True)
class CorpusManifest:
    documents: tuple[DocumentEntry, ...]
    corpus_role: str = "target"

    def __post_init__(self) -> None:
        if self.corpus_role not in ("target", "contrast"):
            raise ValueError(f"corpus_role must be target or contrast: {self.corpus_role!r}")


class CorpusLoadError(OSError):
    """A manifest or document could not be read."""


class VerticalParseError(ValueError):
    """A vertical-format line did not have the expected shape."""

    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


def read_manifest(path: str, corpus_role: str = "target") -> CorpusManifest:
    """Read a line-delimited manifest of `path  year  disciplines  citations`.

    Fields are tab-separated; disciplines are `|`-joined; year and
    citations may be empty. Document paths are resolved relative to the
    manifest's own directory.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CorpusLoadError(f"cannot read manifest {path}: {exc}") from exc
    base = os.path.dirname(os.path.abspath(path))
    docs = []
    for no, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if not parts[0]:
            raise VerticalParseError(path, no, "manifest row has empty path")
        doc_path = parts[0]
        if not os.path.isabs(doc_path):
            doc_path = os.path.normpath(os.path.join(base, doc_path))
        year = _opt_int(parts[1], path, no, "year") if len(parts) > 1 else None
        disciplines: tuple[str, ...] = ()
        if len(parts) > 2 and parts[2].strip():
            disciplines = tuple(d.strip() for d in parts[2].split("|") if d.strip())
        citations = _opt_int(parts[3], path, no, "citations") if len(parts) > 3 else None
        docs.append(DocumentEntry(doc_path, year, disciplines, citations))
    return CorpusManifest(tuple(docs), corpus_role)


def _opt_int(text: str, path: str, no: int, what: str) -> int | None:
    text = text.strip()
    if not text:
        return None
    try:
        return int(text)
    except ValueError:
        raise VerticalParseError(path, no, f"bad {what}: {text!r}") from None


def annotate_text(text: str) -> list[AnnotatedToken]:
    """Run the built-in annotation chain over raw text.

    Sentence and token indexes are assigned after category filtering, so
    the numbering is identical whether a document enters as raw text or
    as the vertical serialization of this function's output.
    """
    tokens: list[AnnotatedToken] = []
    sentence_index = 0
    for sentence in tagger.split_sentences(text):
        kept: list[tuple[str, str, str]] = []
        for surface in tagger.tokenize(sentence):
            low = surface.lower()
            tag = tagger.tag_word(low)
            if tag is None:
                continue
            kept.append((surface, tagger.lemmatize(low, tag), tag))
        if not kept:
            continue
        for token_index, (surface, lemma, tag) in enumerate(kept):
            tokens.append(AnnotatedToken(surface, lemma, PosCategory(tag),
                                         sentence_index, token_index))
        sentence_index += 1
    return tokens


def read_vertical(path: str, tag_map: TagMap | None = None) -> list[AnnotatedToken]:
    """Parse a vertical-format file into major-category tokens."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CorpusLoadError(f"cannot read document {path}: {exc}") from exc
    return parse_vertical(lines, tag_map, path=path)


def parse_vertical(lines, tag_map: TagMap | None = None,
                   path: str = "<vertical>") -> list[AnnotatedToken]:
    if tag_map is None:
        tag_map = default_tag_map()
    tokens: list[AnnotatedToken] = []
    sentence: list[tuple[str, str, str]] = []
    sentence_index = 0

    def flush() -> None:
        nonlocal sentence_index
        if not sentence:
            return
        for token_index, (surface, lemma, code) in enumerate(sentence):
            tokens.append(AnnotatedToken(surface, lemma, PosCategory(code),
                                         sentence_index, token_index))
        sentence_index += 1
        sentence.clear()

    for no, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if line.startswith("#"):
            continue
        if not line.strip():
            flush()
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise VerticalParseError(path, no,
                                     f"expected 3 tab-separated fields, got {len(parts)}")
        surface, lemma, tag = parts
        if not surface or not lemma.strip():
            raise VerticalParseError(path, no, "empty surface or lemma field")
        code = tag_map.major_category(tag.strip())
        if code is None:
            continue
        sentence.append((surface, lemma.strip().lower(), code))
    flush()
    return tokens


def emit_vertical(tokens) -> str:
    """Tokens as vertical text, one sentence per blank-line block."""
    lines = []
    previous = None
    for token in tokens:
        if previous is not None and token.sentence_index != previous:
            lines.append("")
        lines.append(f"{token.surface}\t{token.lemma}\t{token.pos.value}")
        previous = token.sentence_index
    return "\n".join(lines) + "\n" if lines else ""


def write_vertical(tokens: list[AnnotatedToken], path: str) -> None:
    """Serialize tokens back to the vertical format, one sentence per block."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_vertical(tokens))


def default_tag_map() -> TagMap:
    """Map that accepts bare major-category codes plus the common tagsets."""
    return _CompositeMap([TagMap.identity(), TagMap.penn(), TagMap.claws()])


class _CompositeMap(TagMap):
    def __init__(self, maps: list[TagMap]):
        super().__init__("default", {})
        self._maps = maps

    def major_category(self, tag: str) -> str | None:
        for m in self._maps:
            code = m.major_category(tag)
            if code is not None:
                return code
        return None


def load_corpus(manifest: CorpusManifest, mode: str = "raw_text",
                tag_map: TagMap | None = None) -> list[list[AnnotatedToken]]:
    """Produce one token stream per manifest document, in manifest order."""
    if mode not in ("raw_text", "pre_annotated"):
        raise ValueError(f"unknown annotation mode: {mode!r}")
    streams = []
    for doc in manifest.documents:
        if mode == "pre_annotated":
            streams.append(read_vertical(doc.path, tag_map))
        else:
            try:
                with open(doc.path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise CorpusLoadError(f"cannot read document {doc.path}: {exc}") from exc
            streams.append(annotate_text(text))
    return streams


def screen_prefixes(tokens, forbidden_prefixes) -> bool:
    """True when no token's lemma or surface starts with a forbidden prefix."""
    prefixes = tuple(forbidden_prefixes)
    for prefix in prefixes:
        if not prefix or prefix != prefix.lower():
            raise ValueError(f"prefixes must be non-empty lowercase: {prefix!r}")
    if not prefixes:
        return True
    for token in tokens:
        if token.lemma.startswith(prefixes):
            return False
        if token.surface.lower().startswith(prefixes):
            return False
    return True


def corpus_profile(manifest: CorpusManifest,
                   bucket_years: int = 10) -> list[tuple[str, str, int]]:
    """Count documents per (period bucket, discipline).

    A document carrying k discipline labels contributes one count to each
    of the k rows. Documents without a year land in the "unknown" bucket;
    documents without disciplines are reported as "unclassified". Rows
    are sorted by bucket then discipline.
    """
    if bucket_years < 1:
        raise ValueError("bucket_years must be positive")
    counts: dict[tuple[str, str], int] = {}
    for doc in manifest.documents:
        bucket = _bucket_label(doc.year, bucket_years)
        disciplines = doc.disciplines or ("unclassified",)
        for discipline in disciplines:
            key = (bucket, discipline)
            counts[key] = counts.get(key, 0) + 1
    return [(b, d, counts[(b, d)]) for b, d in sorted(counts)]


def _bucket_label(year: int | None, span: int) -> str:
    if year is None:
        return "unknown"
    start = (year // span) * span
    if span == 10:
        return f"{start}s"
    return f"{start}-{start + span - 1}"
