"""Append-only journal of labeling actions.

Every curation step an analyst takes (assigning a cluster to a
component, detaching one, moving a threshold slider, linking an external
concept, rewording a gloss) is recorded as one structured line in a
journal file, flushed and fsynced before the call returns. Replaying the
journal over the seed document rebuilds the exact working state, so the
journal is the single source of truth and restarts lose nothing.
"""

from __future__ import annotations

import json
import math
import os
import re
import threading
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

from . import ontology
from .annotate import PosCategory
from .graphcluster import Clustering
from .ontology import OntologyDocument, UnknownIdError

ACTION_KINDS = ("assign_cluster", "unassign", "set_threshold",
                "link_external", "edit_gloss")

# Allowed payload keys per kind; required ones are marked by the
# validator below.
_PAYLOAD_KEYS = {
    "assign_cluster": {"component_id", "pos", "cluster_id"},
    "unassign": {"component_id", "pos", "cluster_id"},
    "set_threshold": {"pos", "threshold"},
    "link_external": {"component_id", "uri"},
    "edit_gloss": {"component_id", "gloss", "four_ps"},
}

_TIMESTAMP = re.compile(r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(\.\d{1,6})?Z$")
_POS_CODES = frozenset(p.value for p in PosCategory)


class ActionError(ValueError):
    """A labeling action that is structurally invalid."""


class JournalError(ValueError):
    def __init__(self, message: str, path=None, line_no=None):
        detail = message
        if path is not None:
            detail = f"{path}:{line_no}: {message}"
        super().__init__(detail)
        self.path = path
        self.line_no = line_no


def utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


@dataclass(frozen=True)
class LabelAction:
    """One curation step: who did what, when, with what arguments."""

    kind: str
    payload: dict
    actor: str = "analyst"
    timestamp: str = field(default_factory=utc_now)

    def __post_init__(self) -> None:
        if self.kind not in ACTION_KINDS:
            raise ActionError(f"unknown action kind: {self.kind!r}")
        if not self.actor or not isinstance(self.actor, str):
            raise ActionError("actor must be a non-empty string")
        if not _TIMESTAMP.match(self.timestamp):
            raise ActionError(f"timestamp must be a UTC instant like "
                              f"2026-01-31T12:00:00Z, got {self.timestamp!r}")
        if not isinstance(self.payload, dict):
            raise ActionError("payload must be an object")
        _validate_payload(self.kind, self.payload)

    def to_json(self) -> str:
        record = {"actor": self.actor, "kind": self.kind,
                  "payload": self.payload, "timestamp": self.timestamp}
        return json.dumps(record, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "LabelAction":
        record = json.loads(line)
        if not isinstance(record, dict):
            raise ActionError("action record must be an object")
        extra = set(record) - {"actor", "kind", "payload", "timestamp"}
        if extra:
            raise ActionError(f"unknown action fields: {sorted(extra)}")
        missing = {"kind", "payload"} - set(record)
        if missing:
            raise ActionError(f"action is missing fields: {sorted(missing)}")
        return cls(kind=record["kind"], payload=record["payload"],
                   actor=record.get("actor", "analyst"),
                   timestamp=record.get("timestamp", utc_now()))


def _require(payload: dict, key: str, kinds, what: str):
    if key not in payload:
        raise ActionError(f"payload needs {key!r}")
    value = payload[key]
    if not isinstance(value, kinds) or isinstance(value, bool):
        raise ActionError(f"{key!r} must be {what}")
    return value


def _validate_payload(kind: str, payload: dict) -> None:
    allowed = _PAYLOAD_KEYS[kind]
    extra = set(payload) - allowed
    if extra:
        raise ActionError(f"unknown payload keys for {kind}: {sorted(extra)}")
    if "component_id" in allowed:
        value = _require(payload, "component_id", str, "a string")
        if not value:
            raise ActionError("'component_id' must be non-empty")
    if "pos" in allowed:
        value = _require(payload, "pos", str, "a string")
        if value not in _POS_CODES:
            raise ActionError(f"'pos' must be one of N, V, J, R, got {value!r}")
    if kind in ("assign_cluster", "unassign"):
        value = _require(payload, "cluster_id", int, "an integer")
        if value < 0:
            raise ActionError("'cluster_id' must be non-negative")
    if kind == "set_threshold":
        value = _require(payload, "threshold", (int, float), "a number")
        if not math.isfinite(value) or value < 0:
            raise ActionError("'threshold' must be a finite non-negative number")
    if kind == "link_external":
        _require(payload, "uri", str, "a string")
    if kind == "edit_gloss":
        if "gloss" not in payload and "four_ps" not in payload:
            raise ActionError("edit_gloss needs 'gloss' and/or 'four_ps'")
        if "gloss" in payload:
            _require(payload, "gloss", str, "a string")
        if "four_ps" in payload:
            tags = payload["four_ps"]
            if not isinstance(tags, list) or \
                    any(not isinstance(t, str) for t in tags):
                raise ActionError("'four_ps' must be a list of strings")


@dataclass(frozen=True)
class WorkState:
    """The replayed curation state: the document plus per-graph thresholds."""

    doc: OntologyDocument
    thresholds: tuple[tuple[str, float], ...] = ()

    def threshold_for(self, pos: str, default: float = 0.0) -> float:
        return dict(self.thresholds).get(pos, default)


def apply_action(state: WorkState, action: LabelAction,
                 clusterings: dict[str, Clustering]) -> WorkState:
    """One action against one state; raises instead of mutating on error.

    UnknownIdError means the action names something the run does not
    have; ActionError and ValueError mean the action itself is bad.
    """
    payload = action.payload
    if action.kind == "set_threshold":
        updated = dict(state.thresholds)
        updated[payload["pos"]] = float(payload["threshold"])
        return replace(state, thresholds=tuple(sorted(updated.items())))
    if action.kind == "assign_cluster":
        clustering = clusterings.get(payload["pos"])
        if clustering is None:
            raise UnknownIdError(f"no clustering for category {payload['pos']!r}")
        doc = ontology.assign_cluster(state.doc, payload["component_id"],
                                      clustering, payload["cluster_id"])
        return replace(state, doc=doc)
    if action.kind == "unassign":
        ref = ontology.cluster_ref(PosCategory.from_code(payload["pos"]),
                                   payload["cluster_id"])
        doc = ontology.unassign(state.doc, payload["component_id"], ref,
                                clusterings)
        return replace(state, doc=doc)
    if action.kind == "link_external":
        doc = ontology.link_external(state.doc, payload["component_id"],
                                     payload["uri"])
        return replace(state, doc=doc)
    doc = ontology.edit_gloss(state.doc, payload["component_id"],
                              gloss=payload.get("gloss"),
                              four_ps=payload.get("four_ps"))
    return replace(state, doc=doc)


def replay(actions, clusterings: dict[str, Clustering],
           base_doc: OntologyDocument | None = None) -> WorkState:
    """Fold the journal over the seed document. Pure: same input, same state."""
    state = WorkState(doc=base_doc if base_doc is not None
                      else ontology.seed_components())
    for index, action in enumerate(actions):
        try:
            state = apply_action(state, action, clusterings)
        except (ActionError, UnknownIdError, ValueError) as exc:
            raise JournalError(f"action {index} ({action.kind}) does not "
                               f"apply: {exc}") from exc
    return state


class Journal:
    """Line-per-action journal file with serialized, durable appends."""

    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, action: LabelAction) -> None:
        line = action.to_json() + "\n"
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as handle:
                handle.write(line)
                handle.flush()
                os.fsync(handle.fileno())

    def read(self) -> list[LabelAction]:
        if not self.path.exists():
            return []
        actions = []
        with open(self.path, encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                stripped = line.strip()
                if not stripped:
                    continue
                try:
                    actions.append(LabelAction.from_json(stripped))
                except (json.JSONDecodeError, ActionError) as exc:
                    raise JournalError(str(exc), self.path, line_no) from exc
        return actions

    def replay(self, clusterings: dict[str, Clustering],
               base_doc: OntologyDocument | None = None) -> WorkState:
        return replay(self.read(), clusterings, base_doc)
