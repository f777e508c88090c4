"""Adjudication store, network building, depiction, and the HTTP API."""

import json
import math

import pytest
from fastapi.testclient import TestClient

from pagforge.chem import parse_smiles
from pagforge.depict import compute_coordinates, depict_svg
from pagforge.descriptors import FingerprintBitset
from pagforge.service import (
    AdjudicationStore,
    Candidate,
    InvalidDecisionError,
    Scaffold,
    UnknownScaffoldError,
    build_network,
    create_app,
    network_from_store,
    write_candidate_file,
)


@pytest.fixture()
def store(tmp_path):
    candidates = [
        Candidate("mol-1", "C[S+]1CCCC1", ("scaf-1",), {"mw": 103.2}, 0.8, 0.4),
        Candidate("mol-2", "CC[S+]1CCCC1", ("scaf-1",), {"mw": 117.2}, 0.7, 0.5),
        Candidate("mol-3", "C[S+]1CCCCC1", ("scaf-2",), {"mw": 117.2}, 0.6, 0.3),
    ]
    scaffolds = [
        Scaffold("scaf-1", "C1CC[SH+]C1", ("mol-1", "mol-2")),
        Scaffold("scaf-2", "C1CC[SH+]CC1", ("mol-3",)),
    ]
    write_candidate_file(tmp_path / "candidates.json", candidates, scaffolds)
    return AdjudicationStore(tmp_path / "candidates.json",
                             tmp_path / "labels.ndjson")


class TestStore:
    def test_last_write_wins(self, store):
        store.submit_label("scaf-1", "accept")
        store.submit_label("scaf-1", "reject")
        assert store.effective_labels()["scaf-1"] == "reject"

    def test_restart_replays_log(self, store):
        store.submit_label("scaf-1", "accept")
        store.submit_label("scaf-2", "uncertain")
        store.submit_label("scaf-1", "reject")
        reborn = AdjudicationStore(store.candidates_path, store.labels_path)
        assert reborn.effective_labels() == store.effective_labels()
        assert [r.to_json() for r in reborn.label_history()] == [
            r.to_json() for r in store.label_history()
        ]

    def test_unknown_scaffold_rejected(self, store):
        with pytest.raises(UnknownScaffoldError):
            store.submit_label("nope", "accept")

    def test_invalid_decision_rejected(self, store):
        with pytest.raises(InvalidDecisionError):
            store.submit_label("scaf-1", "maybe")

    def test_log_append_only(self, store):
        store.submit_label("scaf-1", "accept")
        size_one = store.labels_path.stat().st_size
        store.submit_label("scaf-1", "reject")
        size_two = store.labels_path.stat().st_size
        assert size_two > size_one

    def test_export_requires_labels(self, store):
        with pytest.raises(ValueError, match="label"):
            store.export()

    def test_export_deterministic(self, store):
        store.submit_label("scaf-1", "accept", timestamp="2026-01-01T00:00:00+00:00")
        store.submit_label("scaf-2", "reject", timestamp="2026-01-01T00:01:00+00:00")
        assert store.export_text() == store.export_text()
        reborn = AdjudicationStore(store.candidates_path, store.labels_path)
        assert reborn.export_text() == store.export_text()

    def test_export_groups_and_score_semantics(self, store):
        store.submit_label("scaf-1", "accept")
        store.submit_label("scaf-2", "uncertain")
        payload = store.export()
        assert payload["counts"] == {"accept": 1, "uncertain": 1, "reject": 0}
        assert "classifier" in payload["score_semantics"]
        accept_group = payload["groups"]["accept"]
        assert accept_group[0]["parents"][0]["classifier_score"] == 0.8


def _bitset(n_total: int, n_shared: int, offset: int) -> FingerprintBitset:
    bits = 0
    for k in range(n_shared):
        bits |= 1 << k
    for k in range(n_total - n_shared):
        bits |= 1 << (offset + k)
    return FingerprintBitset(bits=bits, width=2048)


class TestNetwork:
    def test_threshold_exact_at_boundary(self):
        # Dice distance = 1 - 2c/(|a|+|b|). With |a| = |b| = 1000:
        # c = 351 -> 0.649 (linked);  c = 349 -> 0.651 (not linked).
        scaffolds = [
            Scaffold("s-a", "C1CC[SH+]C1", ("m",)),
            Scaffold("s-b", "C1CC[SH+]CC1", ("m",)),
        ]
        linked_fp = {
            "s-a": _bitset(1000, 351, 400),   # shares exactly bits 0..350
            "s-b": _bitset(1000, 351, 1100),
        }
        assert linked_fp["s-a"].popcount == 1000
        assert linked_fp["s-b"].popcount == 1000
        inter = (linked_fp["s-a"].bits & linked_fp["s-b"].bits).bit_count()
        assert inter == 351
        graph = build_network(scaffolds, [], threshold=0.65,
                              fingerprints=linked_fp)
        sim_edges = [e for e in graph.edges if e["kind"] == "similarity"]
        assert len(sim_edges) == 1
        assert sim_edges[0]["dice_distance"] == pytest.approx(0.649)

        unlinked_fp = {
            "s-a": _bitset(1000, 349, 400),
            "s-b": _bitset(1000, 349, 1100),
        }
        graph = build_network(scaffolds, [], threshold=0.65,
                              fingerprints=unlinked_fp)
        assert [e for e in graph.edges if e["kind"] == "similarity"] == []

    def test_derivation_edges_per_scaffold_list(self, store):
        graph = network_from_store(store)
        derivation = [e for e in graph.edges if e["kind"] == "derivation"]
        assert sorted((e["a"], e["b"]) for e in derivation) == [
            ("mol-1", "scaf-1"), ("mol-2", "scaf-1"), ("mol-3", "scaf-2"),
        ]

    def test_no_self_edges_and_symmetric_rule(self, store):
        graph = network_from_store(store, threshold=1.0)
        for e in graph.edges:
            assert e["a"] != e["b"]

    def test_decisions_propagate_to_molecule_nodes(self, store):
        store.submit_label("scaf-1", "accept")
        graph = network_from_store(store)
        by_id = {n["id"]: n for n in graph.nodes}
        assert by_id["scaf-1"]["decision"] == "accept"
        assert by_id["mol-1"]["decision"] == "accept"
        assert by_id["mol-3"]["decision"] is None


class TestDepiction:
    def test_benzene_regular_hexagon(self):
        pos = compute_coordinates(parse_smiles("c1ccccc1"))
        cx = sum(p[0] for p in pos.values()) / 6
        cy = sum(p[1] for p in pos.values()) / 6
        radii = [math.hypot(p[0] - cx, p[1] - cy) for p in pos.values()]
        assert max(radii) - min(radii) < 1e-9
        # All edges unit length.
        mol = parse_smiles("c1ccccc1")
        for bond in mol.bonds:
            d = math.hypot(pos[bond.a][0] - pos[bond.b][0],
                           pos[bond.a][1] - pos[bond.b][1])
            assert d == pytest.approx(1.0, abs=1e-9)

    def test_identical_bytes(self):
        a = depict_svg(parse_smiles("CC(C)[S+]1CCCC1"))
        b = depict_svg(parse_smiles("CC(C)[S+]1CCCC1"))
        assert a == b

    def test_charged_sulfur_labeled(self):
        svg = depict_svg(parse_smiles("C[S+](C)C"))
        assert "S+" in svg


class TestApi:
    @pytest.fixture()
    def client(self, store):
        return TestClient(create_app(store))

    def test_candidates_paged(self, client):
        payload = client.get(
            "/api/v1/candidates", params={"page": 1, "page_size": 2}).json()
        assert payload["total"] == 3
        assert len(payload["items"]) == 2
        second = client.get(
            "/api/v1/candidates", params={"page": 2, "page_size": 2}).json()
        assert len(second["items"]) == 1

    def test_scaffold_detail(self, client):
        payload = client.get("/api/v1/scaffolds/scaf-1").json()
        assert payload["smiles"] == "C1CC[SH+]C1"
        assert len(payload["parents"]) == 2
        assert client.get("/api/v1/scaffolds/zzz").status_code == 404

    def test_label_flow(self, client):
        r = client.post("/api/v1/labels",
                        json={"scaffold_id": "scaf-1", "decision": "accept"})
        assert r.status_code == 200
        assert r.json()["counts"]["accept"] == 1
        assert client.post(
            "/api/v1/labels",
            json={"scaffold_id": "zzz", "decision": "accept"},
        ).status_code == 404
        assert client.post(
            "/api/v1/labels",
            json={"scaffold_id": "scaf-1", "decision": "maybe"},
        ).status_code == 422

    def test_network_threshold_param(self, client):
        wide = client.get("/api/v1/network", params={"threshold": 1.0}).json()
        narrow = client.get("/api/v1/network", params={"threshold": 0.0}).json()
        wide_sim = [e for e in wide["edges"] if e["kind"] == "similarity"]
        narrow_sim = [e for e in narrow["edges"] if e["kind"] == "similarity"]
        assert len(narrow_sim) <= len(wide_sim)

    def test_export_conflict_then_ok(self, client):
        assert client.get("/api/v1/export").status_code == 409
        client.post("/api/v1/labels",
                    json={"scaffold_id": "scaf-1", "decision": "accept"})
        r = client.get("/api/v1/export")
        assert r.status_code == 200
        assert json.loads(r.content)["counts"]["accept"] == 1

    def test_depict_endpoint(self, client):
        ok = client.get("/api/v1/depict/scaf-1")
        assert ok.status_code == 200
        assert ok.headers["content-type"].startswith("image/svg")
        assert client.get("/api/v1/depict/zzz").status_code == 404

    def test_ui_state_pure_function_of_files(self, store, tmp_path):
        client = TestClient(create_app(store))
        client.post("/api/v1/labels",
                    json={"scaffold_id": "scaf-2", "decision": "uncertain"})
        reborn = AdjudicationStore(store.candidates_path, store.labels_path)
        client2 = TestClient(create_app(reborn))
        a = client.get("/api/v1/network").json()
        b = client2.get("/api/v1/network").json()
        assert a == b
