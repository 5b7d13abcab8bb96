"""API tests against a live server over a real demo run."""

import json
import threading
import urllib.error
import urllib.request
from pathlib import Path

import pytest

from conceptminer.pipeline import RunConfig, run_pipeline
from conceptminer.server import RunState, make_server

DATA = Path(__file__).parent.parent / "demos" / "data"


@pytest.fixture(scope="module")
def run_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("artifacts") / "run"
    run_pipeline(RunConfig(
        target_manifest=DATA / "target.tsv",
        contrast_manifest=DATA / "contrast.tsv",
        triples_path=DATA / "triples.tsv",
        stoplist_path=DATA / "stoplist.txt",
        output_dir=out,
    ))
    return out


@pytest.fixture
def server(run_dir, tmp_path):
    srv = make_server(run_dir, tmp_path / "labels.jsonl", port=0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield srv
    srv.shutdown()
    srv.server_close()
    thread.join(timeout=5)


@pytest.fixture
def base(server):
    host, port = server.server_address[:2]
    return f"http://{host}:{port}"


def get(url):
    try:
        with urllib.request.urlopen(url) as resp:
            return resp.status, resp.headers, resp.read()
    except urllib.error.HTTPError as err:
        return err.code, err.headers, err.read()


def get_json(url):
    status, _, body = get(url)
    return status, json.loads(body)


def post_json(url, payload):
    req = urllib.request.Request(
        url, data=json.dumps(payload).encode(), method="POST",
        headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


def assign(component_id, cluster_id, pos="N"):
    return {"kind": "assign_cluster",
            "payload": {"component_id": component_id, "pos": pos,
                        "cluster_id": cluster_id}}


def novelty_cluster(base):
    _, clusters = get_json(f"{base}/api/clusters/N")
    for cid, members in clusters["clusters"].items():
        if "novelty" in members:
            return int(cid)
    raise AssertionError("demo clustering lost the novelty cluster")


class TestRunStateLoading:
    def test_missing_run_directory_is_explicit(self, tmp_path):
        with pytest.raises(FileNotFoundError, match="runmeta.json"):
            RunState(tmp_path / "nowhere", tmp_path / "labels.jsonl")

    def test_artifacts_loaded(self, run_dir, tmp_path):
        state = RunState(run_dir, tmp_path / "labels.jsonl")
        assert set(state.graphs) == {"J", "N", "R", "V"}
        assert set(state.clusterings) == {"J", "N", "R", "V"}
        assert state.records[0].lemma == "idea"
        assert len(state.work.doc.components) == 14


class TestReadEndpoints:
    def test_keyness_ranked(self, base):
        status, payload = get_json(f"{base}/api/keyness")
        assert status == 200
        records = payload["records"]
        assert len(records) == 27
        assert records[0]["rank"] == 1
        assert records[0]["lemma"] == "idea"
        assert records[0]["llr"] > records[-1]["llr"]

    def test_keyness_top_limits(self, base):
        _, payload = get_json(f"{base}/api/keyness?top=5")
        assert [r["rank"] for r in payload["records"]] == [1, 2, 3, 4, 5]

    def test_keyness_bad_top_is_400(self, base):
        status, payload = get_json(f"{base}/api/keyness?top=zero")
        assert status == 400
        assert payload["error"]["code"] == "bad_request"

    def test_graph_full_and_thresholded(self, base):
        _, full = get_json(f"{base}/api/graph/N")
        assert len(full["nodes"]) == 14
        assert full["threshold"] == 0.0
        assert full["max_weight"] > 0.5
        _, cut = get_json(f"{base}/api/graph/N?threshold=0.5")
        assert 0 < len(cut["edges"]) < len(full["edges"])
        assert all(e["w"] >= 0.5 for e in cut["edges"])
        assert cut["nodes"] == full["nodes"]  # nodes stay, edges go

    def test_graph_unknown_category_404(self, base):
        status, payload = get_json(f"{base}/api/graph/X")
        assert status == 404
        assert payload["error"]["code"] == "not_found"
        assert "X" in payload["error"]["message"]

    def test_ego_shrinks_with_threshold(self, base):
        _, wide = get_json(f"{base}/api/ego/N/idea")
        _, narrow = get_json(f"{base}/api/ego/N/idea?threshold=0.5")
        assert wide["root"] == "idea"
        assert set(narrow["members"]) <= set(wide["members"])
        assert narrow["members"] == ["idea", "notion"]
        assert set(wide["labels"]) == set(wide["members"])

    def test_ego_radius_two_reaches_further(self, base):
        _, near = get_json(f"{base}/api/ego/N/imagination?threshold=0.4")
        _, far = get_json(f"{base}/api/ego/N/imagination?threshold=0.4&radius=2")
        assert set(near["members"]) <= set(far["members"])

    def test_ego_unknown_word_404(self, base):
        status, payload = get_json(f"{base}/api/ego/N/zeppelin")
        assert status == 404
        assert "zeppelin" in payload["error"]["message"]

    def test_ego_bad_radius_400(self, base):
        status, _ = get_json(f"{base}/api/ego/N/idea?radius=0")
        assert status == 400

    def test_clusters_partition_the_graph(self, base):
        _, payload = get_json(f"{base}/api/clusters/N")
        assert payload["pos"] == "N"
        assert payload["converged"] is True
        members = sorted(w for ms in payload["clusters"].values() for w in ms)
        assert members == sorted(payload["labels"])
        assert len(payload["clusters"]) == 4

    def test_components_catalogue(self, base):
        _, payload = get_json(f"{base}/api/components")
        assert len(payload["components"]) == 14
        by_id = {c["id"]: c for c in payload["components"]}
        assert by_id["originality"]["label"] == "Originality"
        assert by_id["originality"]["member_words"] == []

    def test_runmeta_passthrough(self, base, run_dir):
        _, payload = get_json(f"{base}/api/runmeta")
        meta = json.loads((run_dir / "runmeta.json").read_text())
        assert payload == meta

    def test_thresholds_start_empty(self, base):
        _, payload = get_json(f"{base}/api/thresholds")
        assert payload == {"thresholds": {}}

    def test_unknown_route_404(self, base):
        status, payload = get_json(f"{base}/api/nope")
        assert status == 404
        assert payload["error"]["code"] == "not_found"

    def test_options_preflight(self, base):
        req = urllib.request.Request(f"{base}/api/labels", method="OPTIONS")
        with urllib.request.urlopen(req) as resp:
            assert resp.status == 204
            assert resp.headers["Access-Control-Allow-Origin"] == "*"


class TestLabeling:
    def test_assign_applies_and_journals(self, base, server, tmp_path):
        cid = novelty_cluster(base)
        status, payload = post_json(f"{base}/api/labels",
                                    assign("originality", cid))
        assert (status, payload) == (200, {"applied": True,
                                           "kind": "assign_cluster"})
        _, components = get_json(f"{base}/api/components")
        by_id = {c["id"]: c for c in components["components"]}
        assert ["novelty", "N"] in by_id["originality"]["member_words"]
        journal_lines = (tmp_path / "labels.jsonl").read_text().splitlines()
        assert len(journal_lines) == 1

    def test_repeat_assign_is_not_journaled_twice(self, base, tmp_path):
        cid = novelty_cluster(base)
        _, first = post_json(f"{base}/api/labels", assign("originality", cid))
        _, second = post_json(f"{base}/api/labels", assign("originality", cid))
        assert first["applied"] is True
        assert second["applied"] is False
        journal_lines = (tmp_path / "labels.jsonl").read_text().splitlines()
        assert len(journal_lines) == 1

    def test_unknown_component_404(self, base):
        cid = novelty_cluster(base)
        status, payload = post_json(f"{base}/api/labels",
                                    assign("brilliance", cid))
        assert status == 404
        assert payload["error"]["code"] == "not_found"

    def test_unknown_cluster_404(self, base):
        status, payload = post_json(f"{base}/api/labels",
                                    assign("originality", 999))
        assert status == 404
        assert "999" in payload["error"]["message"]

    def test_malformed_body_400(self, base):
        req = urllib.request.Request(
            f"{base}/api/labels", data=b"{not json", method="POST")
        with pytest.raises(urllib.error.HTTPError) as err:
            urllib.request.urlopen(req)
        assert err.value.code == 400
        payload = json.loads(err.value.read())
        assert payload["error"]["code"] == "bad_request"

    def test_unknown_kind_400(self, base):
        status, payload = post_json(f"{base}/api/labels",
                                    {"kind": "promote", "payload": {}})
        assert status == 400
        assert "promote" in payload["error"]["message"]

    def test_post_elsewhere_404(self, base):
        status, _ = post_json(f"{base}/api/keyness", {})
        assert status == 404

    def test_set_threshold_feeds_default_ego(self, base):
        _, before = get_json(f"{base}/api/ego/N/idea")
        assert len(before["members"]) > 2
        status, payload = post_json(f"{base}/api/labels", {
            "kind": "set_threshold",
            "payload": {"pos": "N", "threshold": 0.5}})
        assert (status, payload["applied"]) == (200, True)
        _, thresholds = get_json(f"{base}/api/thresholds")
        assert thresholds == {"thresholds": {"N": 0.5}}
        _, after = get_json(f"{base}/api/ego/N/idea")
        assert after["threshold"] == 0.5
        assert after["members"] == ["idea", "notion"]

    def test_gloss_and_link_roundtrip(self, base):
        post_json(f"{base}/api/labels", {
            "kind": "edit_gloss",
            "payload": {"component_id": "value", "gloss": "Worth to others.",
                        "four_ps": ["Product", "Press"]}})
        post_json(f"{base}/api/labels", {
            "kind": "link_external",
            "payload": {"component_id": "value",
                        "uri": "http://wordnet-rdf.princeton.edu/id/05145118-n"}})
        _, components = get_json(f"{base}/api/components")
        by_id = {c["id"]: c for c in components["components"]}
        assert by_id["value"]["gloss"] == "Worth to others."
        assert by_id["value"]["four_ps"] == ["Press", "Product"]
        assert by_id["value"]["external_links"] == [
            "http://wordnet-rdf.princeton.edu/id/05145118-n"]


class TestTurtleExport:
    def test_export_carries_memberships(self, base):
        cid = novelty_cluster(base)
        post_json(f"{base}/api/labels", assign("originality", cid))
        status, headers, body = get(f"{base}/api/export/ontology.ttl")
        assert status == 200
        assert headers["Content-Type"].startswith("text/turtle")
        text = body.decode("utf-8")
        assert text.startswith("@prefix")
        assert '"novelty (N)"' in text
        assert f'"N:{cid}"' in text

    def test_export_names_the_run(self, base, run_dir):
        _, _, body = get(f"{base}/api/export/ontology.ttl")
        meta = json.loads((run_dir / "runmeta.json").read_text())
        assert f'onto:runId "{meta["run_id"]}"' in body.decode("utf-8")


class TestRestart:
    def test_replay_restores_state(self, run_dir, tmp_path):
        journal = tmp_path / "labels.jsonl"
        state = RunState(run_dir, journal)
        clustering = state.clusterings["N"]
        cid = next(c for c, ms in clustering.clusters().items()
                   if "novelty" in ms)
        from conceptminer.journal import LabelAction
        state.apply(LabelAction("assign_cluster", {
            "component_id": "originality", "pos": "N", "cluster_id": cid}))
        state.apply(LabelAction("set_threshold",
                                {"pos": "N", "threshold": 0.4}))
        state.apply(LabelAction("edit_gloss", {
            "component_id": "value", "gloss": "Worth beyond novelty."}))
        reborn = RunState(run_dir, journal)
        assert reborn.work == state.work
        assert reborn.document() == state.document()


class TestStaticFiles:
    def test_served_next_to_api(self, run_dir, tmp_path):
        static = tmp_path / "static"
        static.mkdir()
        (static / "index.html").write_text("<h1>workbench</h1>")
        (static / "app.js").write_text("console.log('hi')")
        srv = make_server(run_dir, tmp_path / "labels.jsonl", port=0,
                          static_dir=static)
        thread = threading.Thread(target=srv.serve_forever, daemon=True)
        thread.start()
        try:
            host, port = srv.server_address[:2]
            base = f"http://{host}:{port}"
            status, headers, body = get(f"{base}/")
            assert (status, body) == (200, b"<h1>workbench</h1>")
            assert headers["Content-Type"] == "text/html; charset=utf-8"
            status, headers, _ = get(f"{base}/app.js")
            assert status == 200
            assert headers["Content-Type"].startswith("text/javascript")
            status, _, _ = get(f"{base}/missing.css")
            assert status == 404
            status, _, _ = get(f"{base}/../../etc/hosts")
            assert status == 404
        finally:
            srv.shutdown()
            srv.server_close()
            thread.join(timeout=5)

    def test_no_static_dir_404(self, base):
        status, payload = get_json(f"{base}/anything.html")
        assert status == 404
