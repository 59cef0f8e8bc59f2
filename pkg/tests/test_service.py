import json
import threading

import pytest
from fastapi.testclient import TestClient

from semmem.game import KnowledgeMatrix, update_posterior, uniform_posterior
from semmem.service import ServiceConfig, create_app, read_events, replay
from semmem.errors import CorruptLog

from .conftest import FIXTURES


@pytest.fixture()
def app_client(tmp_path):
    cfg = ServiceConfig(
        triples_path=str(FIXTURES / "triples.tsv"),
        lexicon_path=str(FIXTURES / "lexicon.jsonl"),
        synsets_path=str(FIXTURES / "synsets.jsonl"),
        kb_path=str(FIXTURES / "kb.json"),
        reference_path=str(FIXTURES / "reference.txt"),
        data_dir=str(tmp_path / "data"),
    )
    app = create_app(cfg)
    with TestClient(app) as client:
        yield client, app


class TestHealthAndConcepts:
    def test_health(self, app_client):
        client, _ = app_client
        resp = client.get("/v1/health")
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "ok"
        assert body["concepts"] == 18

    def test_concept_detail(self, app_client):
        client, _ = app_client
        resp = client.get("/v1/concepts/ball_toy")
        assert resp.status_code == 200
        body = resp.json()
        assert body["name"] == "ball"
        assert any(n["target"] == "toy" for n in body["neighbors"])

    def test_concept_unknown_404_envelope(self, app_client):
        client, _ = app_client
        resp = client.get("/v1/concepts/ghost")
        assert resp.status_code == 404
        assert set(resp.json()) == {"code", "message"}


class TestEnrich:
    BODY = {
        "docs": [
            {"id": "d1", "label": "sports", "text": "the ball bounces after a kick at the goal"},
            {"id": "d2", "label": "household", "text": "coffee from the coffee maker"},
        ],
        "max_order": 1,
        "tau": 0.2,
    }

    def test_enrich_adds_features(self, app_client):
        client, _ = app_client
        resp = client.post("/v1/enrich", json=self.BODY)
        assert resp.status_code == 200
        body = resp.json()
        d1 = next(d for d in body["docs"] if d["id"] == "d1")
        concepts = {f["concept"] for f in d1["features"]}
        assert "ball_toy" in concepts
        assert any(f["order"] == 1 for f in d1["features"])

    def test_statelessness_byte_identical(self, app_client):
        client, _ = app_client
        r1 = client.post("/v1/enrich", json=self.BODY)
        r2 = client.post("/v1/enrich", json=self.BODY)
        assert r1.content == r2.content

    def test_single_class_corpus_is_domain_error(self, app_client):
        client, _ = app_client
        body = {
            "docs": [
                {"id": "a", "label": "X", "text": "the ball"},
                {"id": "b", "label": "X", "text": "the goal"},
            ]
        }
        resp = client.post("/v1/enrich", json=body)
        assert resp.status_code == 422
        assert resp.json()["code"] == "degenerate_labels"


class TestWsdEndpoint:
    def test_explorer_fixture(self, app_client):
        client, _ = app_client
        resp = client.post(
            "/v1/wsd", json={"text": "The ball bounces after a kick towards the goal."}
        )
        assert resp.status_code == 200
        body = resp.json()
        ball = next(m for m in body["mentions"] if m["surface"] == "ball")
        assert ball["chosen"] == "ball_toy"
        assert body["converged"] is True
        assert {n["id"] for n in body["graph"]["nodes"]} >= {"ball_toy", "kick", "goal"}

    def test_empty_text_rejected(self, app_client):
        client, _ = app_client
        assert client.post("/v1/wsd", json={"text": "  "}).status_code == 422


class TestClusterEndpoint:
    def test_cluster_two_groups(self, app_client):
        client, _ = app_client
        body = {
            "vectors": {
                "a1": {"x": 1.0}, "a2": {"x": 1.0, "y": 0.05},
                "b1": {"z": 1.0}, "b2": {"z": 1.0, "y": 0.05},
            },
            "k": 2,
            "gold": {"a1": "A", "a2": "A", "b1": "B", "b2": "B"},
        }
        resp = client.post("/v1/cluster", json=body)
        assert resp.status_code == 200
        out = resp.json()
        assert out["purity"] == 1.0
        assert out["ari"] == 1.0
        assert len(out["coords"]) == 4

    def test_k_larger_than_n_rejected(self, app_client):
        client, _ = app_client
        body = {"vectors": {"a": {"x": 1.0}}, "k": 5}
        assert client.post("/v1/cluster", json=body).status_code == 422


def play_session(client, answers):
    created = client.post("/v1/sessions", json={}).json()
    sid = created["session_id"]
    last = created
    for a in answers:
        resp = client.post(f"/v1/sessions/{sid}/answer", json={"answer": a})
        assert resp.status_code == 200, resp.text
        last = resp.json()
        if last["state"] == "guessed":
            break
    return sid, created, last


class TestSessions:
    def test_create_returns_question_and_posterior(self, app_client):
        client, _ = app_client
        body = client.post("/v1/sessions", json={}).json()
        assert body["state"] == "asking"
        assert body["question"]["feature"]
        assert sum(p["prob"] for p in body["posterior_top"]) == pytest.approx(1.0, abs=1e-9)

    def test_full_game_reaches_guess(self, app_client):
        client, _ = app_client
        # answer per the goldfish row of the fixture kb
        kb = KnowledgeMatrix.load(str(FIXTURES / "kb.json"))
        row = {f.id: kb.p_yes[kb.concepts.index("goldfish"), i] for i, f in enumerate(kb.features)}
        created = client.post("/v1/sessions", json={}).json()
        sid = created["session_id"]
        state = created
        seen_questions = 0
        while state["state"] == "asking" and seen_questions < 10:
            fid = state["question"]["feature"]
            answer = "yes" if row[fid] >= 0.5 else "no"
            state = client.post(f"/v1/sessions/{sid}/answer", json={"answer": answer}).json()
            seen_questions += 1
        assert state["state"] == "guessed"
        assert state["guess"]["concept"] == "goldfish"

    def test_invalid_answer_400(self, app_client):
        client, _ = app_client
        sid = client.post("/v1/sessions", json={}).json()["session_id"]
        resp = client.post(f"/v1/sessions/{sid}/answer", json={"answer": "maybe"})
        assert resp.status_code == 400
        assert resp.json()["code"] == "bad_request"

    def test_unknown_session_404(self, app_client):
        client, _ = app_client
        resp = client.post("/v1/sessions/nope/answer", json={"answer": "yes"})
        assert resp.status_code == 404

    def test_concurrent_answer_conflict_409(self, app_client):
        client, app = app_client
        sid = client.post("/v1/sessions", json={}).json()["session_id"]
        record = app.state.engine.sessions[sid]
        record.lock.acquire()
        try:
            resp = client.post(f"/v1/sessions/{sid}/answer", json={"answer": "yes"})
            assert resp.status_code == 409
        finally:
            record.lock.release()

    def test_teach_after_guess(self, app_client):
        client, _ = app_client
        sid, _, last = play_session(client, ["yes"] * 10)
        resp = client.post(
            f"/v1/sessions/{sid}/teach",
            json={"concept": "dragon", "facts": [{"feature": "can_fly", "value": 1.0}]},
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["ok"] is True
        assert body["state"] == "done"
        assert body["matrix_version"] >= 1

    def test_teach_malformed_facts_400(self, app_client):
        client, _ = app_client
        sid = client.post("/v1/sessions", json={}).json()["session_id"]
        resp = client.post(f"/v1/sessions/{sid}/teach", json={"concept": "x", "facts": [{}]})
        assert resp.status_code == 400


class TestGenerateEndpoint:
    def test_generate_novel_words(self, app_client):
        client, _ = app_client
        resp = client.post(
            "/v1/generate", json={"morphemes": ["net", "mind"], "count": 5, "seed": 1}
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["candidates"]
        for c in body["candidates"]:
            assert set(c) == {"word", "logp", "assoc", "score"}

    def test_too_few_morphemes_422(self, app_client):
        client, _ = app_client
        assert client.post("/v1/generate", json={"morphemes": ["x"]}).status_code == 422


class TestReplay:
    def test_replay_reproduces_posterior_exactly(self, app_client, tmp_path):
        client, app = app_client
        sid, _, _ = play_session(client, ["yes", "no", "unknown", "yes"])
        record = app.state.engine.sessions[sid]
        posterior, kb, summary = replay(record.log_path)
        for c, p in record.posterior.probs.items():
            assert abs(posterior.probs[c] - p) <= 1e-12
        assert summary["asked"] == record.asked

    def test_replay_with_teach_updates_matrix(self, app_client):
        client, app = app_client
        sid, _, _ = play_session(client, ["yes"] * 10)
        client.post(
            f"/v1/sessions/{sid}/teach",
            json={"concept": "dragon", "facts": [{"feature": "can_fly", "value": 1.0}]},
        )
        record = app.state.engine.sessions[sid]
        _, kb_after, summary = replay(record.log_path)
        assert "dragon" in kb_after.concepts
        assert summary["state"] == "done"
        assert kb_after.version == record.kb.version

    def test_torn_final_line_replays_to_last_event(self, app_client):
        client, app = app_client
        sid, _, _ = play_session(client, ["yes", "no"])
        record = app.state.engine.sessions[sid]
        with open(record.log_path, "a", encoding="utf-8") as fh:
            fh.write('{"seq": 99, "kind": "answer", "payl')  # simulated crash
        events = read_events(record.log_path)
        assert events[-1]["seq"] != 99
        posterior, _, _ = replay(record.log_path)
        assert sum(posterior.probs.values()) == pytest.approx(1.0, abs=1e-12)

    def test_empty_log_corrupt(self, tmp_path):
        empty = tmp_path / "empty.jsonl"
        empty.write_text("")
        with pytest.raises(CorruptLog):
            read_events(empty)

    def test_persistence_failure_returns_503(self, app_client, monkeypatch):
        client, app = app_client
        sid = client.post("/v1/sessions", json={}).json()["session_id"]
        record = app.state.engine.sessions[sid]

        def boom(kind, payload):
            from semmem.service import PersistenceError

            raise PersistenceError("disk detached")

        monkeypatch.setattr(record, "append_event", boom)
        resp = client.post(f"/v1/sessions/{sid}/answer", json={"answer": "yes"})
        assert resp.status_code == 503
