"""Command-line front end.

Subcommands cover each stage on its own (annotate, keyness, distsim,
cluster), the full run (pipeline), the HTTP service (serve), and
ontology export (export). Pipeline settings merge from a config file,
CONCEPTMINER_* environment variables, and flags, in that order of
precedence.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .annotate import annotate_text, emit_vertical, load_corpus, read_manifest
from .distsim import load_triples, pairwise_similarities
from .graphcluster import chinese_whispers, export_graph, parse_graph_json
from .journal import Journal
from .keyness import (
    count_frequencies,
    emit_keyness_report,
    merge_tables,
    read_keyness_report,
    read_stoplist,
    score,
    select_target_words,
)
from .ontology import export_json, export_turtle, seed_components
from .pipeline import (
    ConfigError,
    RunConfig,
    StageError,
    build_config,
    env_overrides,
    read_config_file,
    run_pipeline,
)
from .server import make_server

# Fields a `pipeline` invocation can set from the command line; flag
# names are the field names with dashes.
_PIPELINE_FIELDS = ("target_manifest", "contrast_manifest", "triples_path",
                    "output_dir", "llr_threshold", "min_count", "top_k_roots",
                    "cw_seed", "cw_max_iterations", "annotation_mode",
                    "stoplist_path", "min_similarity", "ego_threshold",
                    "ego_radius", "base_uri")


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _cmd_annotate(args) -> int:
    with open(args.input, encoding="utf-8") as handle:
        tokens = annotate_text(handle.read())
    _write_output(emit_vertical(tokens), args.output)
    return 0


def _tables_from_manifest(path, role, mode):
    manifest = read_manifest(path, role)
    streams = load_corpus(manifest, mode)
    return merge_tables(count_frequencies(s) for s in streams)


def _cmd_keyness(args) -> int:
    target = _tables_from_manifest(args.target_manifest, "target",
                                   args.annotation_mode)
    contrast = _tables_from_manifest(args.contrast_manifest, "contrast",
                                     args.annotation_mode)
    stoplist = read_stoplist(args.stoplist) if args.stoplist else frozenset()
    selected = select_target_words(score(target, contrast),
                                   args.llr_threshold, args.min_count,
                                   stoplist)
    _write_output(emit_keyness_report(selected, args.top), args.output)
    return 0


def _cmd_distsim(args) -> int:
    store = load_triples(args.triples)
    records = read_keyness_report(args.keyness)
    if args.pos:
        records = [r for r in records if r.pos.value == args.pos]
    words = [(r.lemma, r.pos) for r in records]
    pairs = pairwise_similarities(words, store, args.min_similarity)
    lines = ["lemma_a\tlemma_b\tpos\tsimilarity"]
    lines += [f"{a}\t{b}\t{pos.value}\t{sim!r}"
              for (a, pos), (b, _), sim in pairs]
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_cluster(args) -> int:
    with open(args.graph, encoding="utf-8") as handle:
        graph, _ = parse_graph_json(handle.read())
    clustering = chinese_whispers(graph, args.seed, args.max_iterations)
    _write_output(export_graph(clustering, args.format), args.output)
    return 0


def _cmd_pipeline(args) -> int:
    file_values = read_config_file(args.config) if args.config else {}
    env_values = env_overrides(os.environ)
    overrides = {}
    for name in _PIPELINE_FIELDS:
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    config = build_config(file_values, env_values, overrides)
    result = run_pipeline(config)
    print(f"run {result.run_id} complete: {result.output_dir}")
    return 0


def _cmd_serve(args) -> int:
    server = make_server(args.run_dir, args.journal, args.host, args.port,
                         static_dir=args.static_dir, verbose=args.verbose)
    host, port = server.server_address[:2]
    print(f"serving run {args.run_dir} on http://{host}:{port}/ "
          f"(journal: {args.journal})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def _cmd_export(args) -> int:
    if args.run_dir:
        from .server import RunState
        state = RunState(args.run_dir,
                         args.journal or Path(args.run_dir) / "labels.jsonl")
        doc = state.document()
    else:
        doc = seed_components(args.base_uri) if args.base_uri \
            else seed_components()
    text = export_turtle(doc) if args.format == "turtle" else export_json(doc)
    _write_output(text, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conceptminer",
        description="Mine concept components from a contrastive corpus: "
                    "keyness, distributional similarity, graph clustering, "
                    "and a curated component ontology.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("annotate", help="tag and lemmatize raw text "
                                        "into vertical format")
    p.add_argument("input", help="raw text file")
    p.add_argument("-o", "--output", default=None, help="output path or -")
    p.set_defaults(func=_cmd_annotate)

    p = sub.add_parser("keyness", help="score and filter target words "
                                       "against the contrast corpus")
    p.add_argument("--target-manifest", required=True)
    p.add_argument("--contrast-manifest", required=True)
    p.add_argument("--llr-threshold", type=float, default=10.83)
    p.add_argument("--min-count", type=int, default=5)
    p.add_argument("--stoplist", default=None)
    p.add_argument("--annotation-mode", default="raw_text",
                   choices=("raw_text", "pre_annotated"))
    p.add_argument("--top", type=int, default=None,
                   help="emit only the top K rows")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_keyness)

    p = sub.add_parser("distsim", help="similarity scores for report words "
                                       "from dependency triples")
    p.add_argument("--triples", required=True)
    p.add_argument("--keyness", required=True,
                   help="keyness report naming the words to compare")
    p.add_argument("--pos", default=None, choices=("N", "V", "J", "R"))
    p.add_argument("--min-similarity", type=float, default=0.0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_distsim)

    p = sub.add_parser("cluster", help="cluster a similarity graph")
    p.add_argument("--graph", required=True, help="graph json file")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-iterations", type=int, default=100)
    p.add_argument("--format", default="json",
                   choices=("json", "dot", "graphml"))
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_cluster)

    p = sub.add_parser("pipeline", help="run every stage and write artifacts")
    p.add_argument("--config", default=None, help="key = value settings file")
    for name in _PIPELINE_FIELDS:
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, default=None)
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("serve", help="serve run artifacts over HTTP and "
                                     "record labeling actions")
    p.add_argument("--run-dir", required=True)
    p.add_argument("--journal", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static-dir", default=None,
                   help="directory of workbench files to serve at /")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("export", help="export the component ontology")
    p.add_argument("--run-dir", default=None,
                   help="run directory; omit for the bare seed document")
    p.add_argument("--journal", default=None,
                   help="journal path (default: labels.jsonl in the run dir)")
    p.add_argument("--format", default="turtle", choices=("turtle", "json"))
    p.add_argument("--base-uri", default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
