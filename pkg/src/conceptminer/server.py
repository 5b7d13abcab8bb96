"""HTTP service over a finished run: read artifacts, accept labeling.

Serves the keyness table, per-category graphs with live threshold cuts,
ego networks, clusterings, and the component document; accepts labeling
actions, appending each to the journal before acknowledging it. State is
rebuilt from the journal on startup, so restarts land exactly where the
analyst left off. Optionally serves a static directory (the workbench
bundle) next to the API.
"""

from __future__ import annotations

import json
import threading
from dataclasses import replace
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, unquote, urlparse

from . import __version__
from .graphcluster import (
    SimilarityGraph,
    ego_network,
    parse_clustering_json,
    parse_graph_json,
)
from .journal import ActionError, Journal, LabelAction, apply_action
from .keyness import read_keyness_report
from .ontology import (
    Provenance,
    UnknownIdError,
    export_json,
    export_turtle,
    seed_components,
)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


# Sentinel a GET route returns when it has already written the response.
_ALREADY_SENT = object()


def _bad_request(message: str) -> ApiError:
    return ApiError(400, "bad_request", message)


def _not_found(message: str) -> ApiError:
    return ApiError(404, "not_found", message)


class RunState:
    """Run artifacts plus the journal-replayed curation state."""

    def __init__(self, run_dir, journal_path):
        self.run_dir = Path(run_dir)
        runmeta_path = self.run_dir / "runmeta.json"
        if not runmeta_path.exists():
            raise FileNotFoundError(
                f"no runmeta.json under {self.run_dir}; run the pipeline first")
        self.runmeta = json.loads(runmeta_path.read_text(encoding="utf-8"))
        self.records = read_keyness_report(self.run_dir / "keyness.tsv")
        self.graphs: dict[str, SimilarityGraph] = {}
        self.clusterings = {}
        artifacts = self.runmeta.get("artifacts", {})
        for code, rel in sorted(artifacts.get("graphs", {}).items()):
            text = (self.run_dir / rel).read_text(encoding="utf-8")
            self.graphs[code] = parse_graph_json(text)[0]
        for code, rel in sorted(artifacts.get("clusters", {}).items()):
            text = (self.run_dir / rel).read_text(encoding="utf-8")
            self.clusterings[code] = parse_clustering_json(text)
        self.base_uri = self.runmeta.get("parameters", {}).get(
            "base_uri", seed_components().base_uri)
        self.journal = Journal(journal_path)
        self._seed = seed_components(self.base_uri)
        self.work = self.journal.replay(self.clusterings, self._seed)
        self._write_lock = threading.Lock()

    def apply(self, action: LabelAction) -> bool:
        """Apply and journal one action; False when it changes nothing."""
        with self._write_lock:
            updated = apply_action(self.work, action, self.clusterings)
            if updated == self.work:
                return False
            self.journal.append(action)
            self.work = updated
            return True

    def provenance(self) -> Provenance:
        return Provenance(
            run_id=self.runmeta.get("run_id", ""),
            input_digests=tuple(sorted(
                self.runmeta.get("input_digests", {}).items())),
            parameters=tuple(sorted(
                self.runmeta.get("parameters", {}).items())))

    def document(self):
        return replace(self.work.doc, provenance=self.provenance())


def _filtered(graph: SimilarityGraph, threshold: float) -> dict:
    edges = [{"a": a, "b": b, "w": w}
             for (a, b), w in sorted(graph.edges.items()) if w >= threshold]
    return {"pos": graph.pos.value, "nodes": sorted(graph.nodes),
            "edges": edges, "threshold": threshold,
            "max_weight": graph.max_weight()}


def _query_float(params: dict, name: str, default: float) -> float:
    if name not in params:
        return default
    try:
        value = float(params[name][0])
    except ValueError:
        raise _bad_request(f"query parameter {name!r} must be a number")
    if value < 0:
        raise _bad_request(f"query parameter {name!r} must be non-negative")
    return value


def _query_int(params: dict, name: str, default: int, minimum: int) -> int:
    if name not in params:
        return default
    try:
        value = int(params[name][0])
    except ValueError:
        raise _bad_request(f"query parameter {name!r} must be an integer")
    if value < minimum:
        raise _bad_request(f"query parameter {name!r} must be >= {minimum}")
    return value


_CONTENT_TYPES = {".html": "text/html; charset=utf-8",
                  ".js": "text/javascript; charset=utf-8",
                  ".mjs": "text/javascript; charset=utf-8",
                  ".css": "text/css; charset=utf-8",
                  ".json": "application/json",
                  ".svg": "image/svg+xml",
                  ".map": "application/json",
                  ".ico": "image/x-icon"}


class ApiHandler(BaseHTTPRequestHandler):
    server_version = f"conceptminer/{__version__}"
    protocol_version = "HTTP/1.1"

    @property
    def state(self) -> RunState:
        return self.server.state  # type: ignore[attr-defined]

    @property
    def static_dir(self):
        return self.server.static_dir  # type: ignore[attr-defined]

    def log_message(self, format, *args):  # quiet by default
        if getattr(self.server, "verbose", False):
            super().log_message(format, *args)

    # -- plumbing ------------------------------------------------------------

    def _send(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, payload, status: int = 200) -> None:
        body = json.dumps(payload, sort_keys=True, ensure_ascii=False).encode()
        self._send(status, body, "application/json")

    def _send_error_body(self, err: ApiError) -> None:
        self._send_json({"error": {"code": err.code, "message": err.message}},
                        err.status)

    # -- dispatch ------------------------------------------------------------

    def do_OPTIONS(self):
        self._send(204, b"", "text/plain")

    def do_GET(self):
        try:
            url = urlparse(self.path)
            parts = [unquote(p) for p in url.path.split("/") if p]
            params = parse_qs(url.query)
            if parts[:1] == ["api"]:
                result = self._route_get(parts[1:], params)
                if result is not _ALREADY_SENT:
                    self._send_json(result)
            else:
                self._serve_static(parts)
        except ApiError as err:
            self._send_error_body(err)
        except BrokenPipeError:
            pass

    def do_POST(self):
        try:
            url = urlparse(self.path)
            parts = [p for p in url.path.split("/") if p]
            if parts != ["api", "labels"]:
                raise _not_found(f"no POST route at {url.path}")
            length = int(self.headers.get("Content-Length", 0))
            raw = self.rfile.read(length) if length else b""
            try:
                action = LabelAction.from_json(raw.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError, ActionError) as exc:
                raise _bad_request(f"bad action: {exc}")
            try:
                applied = self.state.apply(action)
            except UnknownIdError as exc:
                raise _not_found(str(exc))
            except (ActionError, ValueError) as exc:
                raise _bad_request(str(exc))
            self._send_json({"applied": applied, "kind": action.kind})
        except ApiError as err:
            self._send_error_body(err)
        except BrokenPipeError:
            pass

    # -- GET routes ----------------------------------------------------------

    def _route_get(self, parts: list[str], params: dict):
        state = self.state
        if parts == ["keyness"]:
            top = _query_int(params, "top", len(state.records), 1)
            return {"records": [{
                "rank": i, "lemma": r.lemma, "pos": r.pos.value, "llr": r.llr,
                "o_target": r.o_target, "e_target": r.e_target,
                "o_contrast": r.o_contrast, "e_contrast": r.e_contrast,
            } for i, r in enumerate(state.records[:top], start=1)]}
        if len(parts) == 2 and parts[0] == "graph":
            graph = state.graphs.get(parts[1])
            if graph is None:
                raise _not_found(f"no graph for category {parts[1]!r}")
            return _filtered(graph, _query_float(params, "threshold", 0.0))
        if len(parts) == 3 and parts[0] == "ego":
            pos, lemma = parts[1], parts[2]
            graph = state.graphs.get(pos)
            if graph is None:
                raise _not_found(f"no graph for category {pos!r}")
            if lemma not in graph.nodes:
                raise _not_found(f"no node {lemma!r} in the {pos} graph")
            threshold = _query_float(params, "threshold",
                                     state.work.threshold_for(pos))
            radius = _query_int(params, "radius", 1, 1)
            ego = ego_network(graph, lemma, threshold, radius)
            return {"pos": pos, "root": ego.root, "threshold": ego.threshold,
                    "radius": radius, "members": sorted(ego.members),
                    "edges": [{"a": a, "b": b, "w": w}
                              for (a, b), w in sorted(ego.edges.items())],
                    "labels": {node: state.clusterings[pos].labels[node]
                               for node in sorted(ego.members)}}
        if len(parts) == 2 and parts[0] == "clusters":
            clustering = state.clusterings.get(parts[1])
            if clustering is None:
                raise _not_found(f"no clustering for category {parts[1]!r}")
            return {"pos": parts[1], "seed": clustering.seed,
                    "iterations": clustering.iterations_run,
                    "converged": clustering.converged,
                    "labels": dict(sorted(clustering.labels.items())),
                    "clusters": {str(cid): members for cid, members
                                 in clustering.clusters().items()}}
        if parts == ["components"]:
            return json.loads(export_json(state.document()))
        if parts == ["thresholds"]:
            return {"thresholds": dict(state.work.thresholds)}
        if parts == ["runmeta"]:
            return state.runmeta
        if parts == ["export", "ontology.ttl"]:
            body = export_turtle(state.document()).encode("utf-8")
            self._send(200, body, "text/turtle; charset=utf-8")
            return _ALREADY_SENT
        raise _not_found(f"no route at /{'/'.join(['api'] + parts)}")

    # -- static workbench files ----------------------------------------------

    def _serve_static(self, parts: list[str]) -> None:
        if self.static_dir is None:
            raise _not_found("no static content configured")
        root = Path(self.static_dir).resolve()
        target = root.joinpath(*parts) if parts else root / "index.html"
        target = target.resolve()
        if not target.is_relative_to(root) or not target.is_file():
            raise _not_found(f"no such file: /{'/'.join(parts)}")
        content_type = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self._send(200, target.read_bytes(), content_type)


def make_server(run_dir, journal_path, host: str = "127.0.0.1",
                port: int = 8000, static_dir=None,
                verbose: bool = False) -> ThreadingHTTPServer:
    """Build the service; caller decides when to serve_forever()."""
    state = RunState(run_dir, journal_path)
    server = ThreadingHTTPServer((host, port), ApiHandler)
    server.state = state  # type: ignore[attr-defined]
    server.static_dir = static_dir  # type: ignore[attr-defined]
    server.verbose = verbose  # type: ignore[attr-defined]
    return server
