"""End-to-end run orchestration and run configuration.

A run reads the two corpora, scores and filters target words, builds the
per-category similarity graphs from the dependency triples, clusters
each graph, cuts default ego networks around the top-ranked words, and
writes everything plus a metadata record into the output directory. All
artifacts are deterministic functions of the inputs and the
configuration: rerunning with the same inputs produces byte-identical
files. Configuration merges, in increasing precedence: built-in
defaults, a `key = value` config file, CONCEPTMINER_* environment
variables, and explicit (CLI) overrides.
"""

from __future__ import annotations

import hashlib
import json
import shutil
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import __version__
from .annotate import load_corpus, read_manifest
from .distsim import load_triples, pairwise_similarities
from .graphcluster import (
    build_graph,
    chinese_whispers,
    ego_network,
    export_graph,
)
from .keyness import (
    DEFAULT_LLR_THRESHOLD,
    DEFAULT_MIN_COUNT,
    count_frequencies,
    merge_tables,
    read_stoplist,
    score,
    select_target_words,
    write_keyness_report,
)
from .ontology import DEFAULT_BASE_URI

ENV_PREFIX = "CONCEPTMINER_"
STALE_MARKER = "STALE"

STAGES = ("annotate", "keyness", "distsim", "cluster", "ego", "report")


class ConfigError(ValueError):
    pass


class StageError(RuntimeError):
    """A pipeline stage failed; carries which one."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}' failed: {message}")
        self.stage = stage


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs; value object, safe to hash into a run id."""

    target_manifest: Path
    contrast_manifest: Path
    triples_path: Path
    output_dir: Path
    llr_threshold: float = DEFAULT_LLR_THRESHOLD
    min_count: int = DEFAULT_MIN_COUNT
    top_k_roots: int = 20
    cw_seed: int = 1
    cw_max_iterations: int = 100
    annotation_mode: str = "raw_text"
    stoplist_path: Path | None = None
    min_similarity: float = 0.0
    ego_threshold: float = 0.0
    ego_radius: int = 1
    base_uri: str = DEFAULT_BASE_URI

    def __post_init__(self) -> None:
        if self.llr_threshold < 0 or self.min_similarity < 0 or \
                self.ego_threshold < 0:
            raise ConfigError("thresholds must be non-negative")
        if self.min_count < 0:
            raise ConfigError("min_count must be non-negative")
        if self.top_k_roots < 1:
            raise ConfigError("top_k_roots must be at least 1")
        if self.cw_max_iterations < 1:
            raise ConfigError("cw_max_iterations must be at least 1")
        if self.ego_radius < 1:
            raise ConfigError("ego_radius must be at least 1")
        if self.annotation_mode not in ("raw_text", "pre_annotated"):
            raise ConfigError(f"unknown annotation mode: {self.annotation_mode!r}")


_PATH_FIELDS = {"target_manifest", "contrast_manifest", "triples_path",
                "output_dir", "stoplist_path"}
_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name: str, raw: str):
    if name in _PATH_FIELDS:
        return Path(raw) if raw else None
    kind = _FIELD_TYPES[name]
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc
    return raw


def read_config_file(path) -> dict[str, str]:
    """Parse `key = value` lines; # starts a comment, blank lines skipped."""
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for line_no, line in enumerate(lines, start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{line_no}: expected key = value")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _FIELD_TYPES:
            raise ConfigError(f"{path}:{line_no}: unknown setting {key!r}")
        values[key] = value.strip()
    return values


def env_overrides(environ) -> dict[str, str]:
    """Pick CONCEPTMINER_<FIELD> variables out of an environment mapping."""
    values = {}
    for name in _FIELD_TYPES:
        raw = environ.get(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = raw
    return values


def build_config(file_values=None, env_values=None, overrides=None) -> RunConfig:
    """Merge raw string settings by precedence: overrides > env > file."""
    merged: dict[str, str] = {}
    for layer in (file_values, env_values, overrides):
        if layer:
            merged.update(layer)
    unknown = set(merged) - set(_FIELD_TYPES)
    if unknown:
        raise ConfigError(f"unknown settings: {sorted(unknown)}")
    kwargs = {name: _coerce(name, raw) for name, raw in merged.items()}
    missing = {"target_manifest", "contrast_manifest", "triples_path",
               "output_dir"} - set(kwargs)
    if missing:
        raise ConfigError(f"missing required settings: {sorted(missing)}")
    return RunConfig(**kwargs)


def _digest_file(path) -> str:
    sha = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            sha.update(chunk)
    return sha.hexdigest()


def _digest_documents(manifest) -> str:
    sha = hashlib.sha256()
    for doc in manifest.documents:
        sha.update(_digest_file(doc.path).encode())
        sha.update(b"\n")
    return sha.hexdigest()


def input_digests(config: RunConfig) -> dict[str, str]:
    digests = {
        "target_manifest": _digest_file(config.target_manifest),
        "contrast_manifest": _digest_file(config.contrast_manifest),
        "triples": _digest_file(config.triples_path),
    }
    digests["target_documents"] = _digest_documents(
        read_manifest(config.target_manifest, "target"))
    digests["contrast_documents"] = _digest_documents(
        read_manifest(config.contrast_manifest, "contrast"))
    if config.stoplist_path is not None:
        digests["stoplist"] = _digest_file(config.stoplist_path)
    return digests


def run_parameters(config: RunConfig) -> dict[str, str]:
    """The knobs that shape results, as plain strings for the record."""
    return {
        "llr_threshold": repr(config.llr_threshold),
        "min_count": str(config.min_count),
        "top_k_roots": str(config.top_k_roots),
        "cw_seed": str(config.cw_seed),
        "cw_max_iterations": str(config.cw_max_iterations),
        "annotation_mode": config.annotation_mode,
        "min_similarity": repr(config.min_similarity),
        "ego_threshold": repr(config.ego_threshold),
        "ego_radius": str(config.ego_radius),
        "base_uri": config.base_uri,
    }


def compute_run_id(parameters: dict[str, str], digests: dict[str, str]) -> str:
    canonical = json.dumps({"parameters": parameters, "inputs": digests},
                           sort_keys=True)
    return hashlib.sha256(canonical.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class RunResult:
    run_id: str
    output_dir: Path
    keyness_path: Path
    graph_paths: tuple[tuple[str, Path], ...]
    cluster_paths: tuple[tuple[str, Path], ...]
    ego_paths: tuple[Path, ...]
    runmeta_path: Path


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _flag_stale(output_dir: Path, stage: str, message: str) -> None:
    try:
        _write_text(output_dir / STALE_MARKER,
                    f"stage = {stage}\nerror = {message}\n")
    except OSError:
        pass  # flagging must never mask the original failure


def run_pipeline(config: RunConfig) -> RunResult:
    """Execute all stages; on failure flag the output directory stale.

    Raises StageError naming the failed stage. On success any stale
    marker from an earlier attempt is cleared.
    """
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    for stale_dir in ("graphs", "clusters", "egos"):
        shutil.rmtree(out / stale_dir, ignore_errors=True)

    stage = "annotate"
    try:
        target_manifest = read_manifest(config.target_manifest, "target")
        contrast_manifest = read_manifest(config.contrast_manifest, "contrast")
        target_streams = load_corpus(target_manifest, config.annotation_mode)
        contrast_streams = load_corpus(contrast_manifest, config.annotation_mode)
    except (OSError, ValueError) as exc:
        _flag_stale(out, stage, str(exc))
        raise StageError(stage, str(exc)) from exc

    stage = "keyness"
    try:
        stoplist = (read_stoplist(config.stoplist_path)
                    if config.stoplist_path is not None else frozenset())
        target_table = merge_tables(count_frequencies(s) for s in target_streams)
        contrast_table = merge_tables(count_frequencies(s) for s in contrast_streams)
        records = score(target_table, contrast_table)
        selected = select_target_words(records, config.llr_threshold,
                                       config.min_count, stoplist)
        keyness_path = out / "keyness.tsv"
        write_keyness_report(selected, keyness_path)
    except (OSError, ValueError) as exc:
        _flag_stale(out, stage, str(exc))
        raise StageError(stage, str(exc)) from exc

    stage = "distsim"
    try:
        store = load_triples(config.triples_path)
        words = [(r.lemma, r.pos) for r in selected]
        pairs = pairwise_similarities(words, store, config.min_similarity)
        graphs = {}
        for pos in sorted({r.pos for r in selected}, key=lambda p: p.value):
            own_words = [r.lemma for r in selected if r.pos == pos]
            own_pairs = [p for p in pairs if p[0][1] == pos]
            graphs[pos] = build_graph(own_pairs, pos, own_words)
        graph_paths = []
        for pos, graph in sorted(graphs.items(), key=lambda kv: kv[0].value):
            path = out / "graphs" / f"{pos.value}.json"
            _write_text(path, export_graph(graph, "json"))
            graph_paths.append((pos.value, path))
    except (OSError, ValueError) as exc:
        _flag_stale(out, stage, str(exc))
        raise StageError(stage, str(exc)) from exc

    stage = "cluster"
    try:
        clusterings = {}
        cluster_paths = []
        for pos, graph in sorted(graphs.items(), key=lambda kv: kv[0].value):
            clustering = chinese_whispers(graph, config.cw_seed,
                                          config.cw_max_iterations)
            clusterings[pos] = clustering
            path = out / "clusters" / f"{pos.value}.json"
            _write_text(path, export_graph(clustering, "json"))
            cluster_paths.append((pos.value, path))
    except (OSError, ValueError) as exc:
        _flag_stale(out, stage, str(exc))
        raise StageError(stage, str(exc)) from exc

    stage = "ego"
    try:
        ego_paths = []
        for record in selected[:config.top_k_roots]:
            graph = graphs[record.pos]
            ego = ego_network(graph, record.lemma, config.ego_threshold,
                              config.ego_radius)
            path = out / "egos" / record.pos.value / f"{record.lemma}.json"
            _write_text(path, export_graph(ego, "json"))
            ego_paths.append(path)
    except (OSError, ValueError) as exc:
        _flag_stale(out, stage, str(exc))
        raise StageError(stage, str(exc)) from exc

    stage = "report"
    try:
        parameters = run_parameters(config)
        digests = input_digests(config)
        run_id = compute_run_id(parameters, digests)
        runmeta = {
            "run_id": run_id,
            "tool_version": __version__,
            "parameters": parameters,
            "input_digests": digests,
            "artifacts": {
                "keyness": "keyness.tsv",
                "graphs": {code: f"graphs/{code}.json"
                           for code, _ in graph_paths},
                "clusters": {code: f"clusters/{code}.json"
                             for code, _ in cluster_paths},
                "egos": [str(p.relative_to(out)) for p in ego_paths],
            },
        }
        runmeta_path = out / "runmeta.json"
        _write_text(runmeta_path,
                    json.dumps(runmeta, sort_keys=True, indent=1) + "\n")
    except (OSError, ValueError) as exc:
        _flag_stale(out, stage, str(exc))
        raise StageError(stage, str(exc)) from exc

    stale = out / STALE_MARKER
    if stale.exists():
        stale.unlink()
    return RunResult(run_id=run_id, output_dir=out, keyness_path=keyness_path,
                     graph_paths=tuple(graph_paths),
                     cluster_paths=tuple(cluster_paths),
                     ego_paths=tuple(ego_paths), runmeta_path=runmeta_path)
