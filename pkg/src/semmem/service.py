"""HTTP/JSON service exposing the engine.

Endpoints (all under /v1): health, concepts/{id}, enrich, wsd, cluster,
sessions, sessions/{id}/answer, sessions/{id}/teach, generate.  Every
error response uses the envelope {"code": ..., "message": ...}.

Sessions are persisted as append-only JSONL event logs under
data_dir/sessions/{id}.jsonl; replaying a log reconstructs the exact
session state.  Concurrent answers to one session get 409.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field, fields as dc_fields
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import coset, game, neologism
from .activation import ActivationConfig
from .cluster import cluster_documents, mds_embed
from .coset import ConceptVector, CorpusDoc, ExpansionConfig
from .errors import CorruptLog, NotFound, SemmemError
from .network import SemanticNetwork, ingest_network, neighbors
from .textproc import build_stem_index, map_concepts, preprocess
from .wsd import (
    WSD_ACTIVATION,
    SynsetCountTable,
    SynsetInventory,
    build_reference_counts,
    disambiguate_activation,
)

DEFAULT_RELATION_TYPES = frozenset(
    {"is_a", "used_in", "can", "part_of", "involves", "acts_on", "makes",
     "located_in", "located_at", "made_in", "near", "contains", "stores",
     "held_in", "accompanies", "hosts", "indicates"}
)


@dataclass
class ServiceConfig:
    triples_path: str = "fixtures/triples.tsv"
    lexicon_path: str = "fixtures/lexicon.jsonl"
    synsets_path: str | None = None
    kb_path: str | None = None
    reference_path: str | None = None
    port: int = 8765
    data_dir: str = "data"
    default_seed: int = 0
    static_dir: str | None = None
    activation: dict = field(default_factory=dict)
    expansion: dict = field(default_factory=dict)

    ENV_PREFIX = "SEMMEM_"

    @classmethod
    def load(cls, path: str | None = None, overrides: dict | None = None) -> "ServiceConfig":
        """Merge (highest wins): explicit overrides > env > config file > defaults."""
        values: dict = {}
        if path:
            with open(path, encoding="utf-8") as fh:
                values.update(json.load(fh))
        simple = {f.name for f in dc_fields(cls)} - {"activation", "expansion"}
        for name in simple:
            env = os.environ.get(cls.ENV_PREFIX + name.upper())
            if env is not None:
                values[name] = int(env) if name in ("port", "default_seed") else env
        for key, value in (overrides or {}).items():
            if value is not None:
                values[key] = value
        known = {f.name for f in dc_fields(cls)}
        return cls(**{k: v for k, v in values.items() if k in known})

    def validate(self) -> None:
        for attr in ("triples_path", "lexicon_path", "synsets_path", "kb_path",
                     "reference_path"):
            value = getattr(self, attr)
            if value and not os.path.exists(value):
                raise SemmemError(f"config: {attr} file not found: {value}")
        if not 1 <= self.port <= 65535:
            raise SemmemError(f"config: port {self.port} outside [1, 65535]")


def _event(seq: int, kind: str, payload: dict) -> dict:
    return {"seq": seq, "kind": kind, "payload": payload}


class SessionRecord:
    def __init__(self, session_id: str, kb: game.KnowledgeMatrix, cfg: game.SessionConfig,
                 log_path: Path):
        self.id = session_id
        self.kb = kb
        self.cfg = cfg
        self.posterior = game.uniform_posterior(kb)
        self.asked: list[tuple[str, str]] = []
        self.state = "asking"
        self.current_feature: str | None = None
        self.guess: str | None = None
        self.log_path = log_path
        self.lock = threading.Lock()
        self.seq = 0

    def remaining_budget(self) -> int:
        return self.cfg.budget - len(self.asked)

    def append_event(self, kind: str, payload: dict) -> None:
        self.seq += 1
        line = json.dumps(_event(self.seq, kind, payload), sort_keys=True)
        try:
            self.log_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.log_path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
        except OSError as exc:
            raise PersistenceError(str(exc)) from exc

    def posterior_top(self, limit: int = 10) -> list[dict]:
        return [
            {"concept": c, "prob": p} for c, p in self.posterior.top(limit)
        ]


class PersistenceError(Exception):
    pass


def read_events(log_path: str | Path) -> list[dict]:
    """Parse a session log, tolerating a torn final line (crash safety)."""
    events: list[dict] = []
    try:
        with open(log_path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CorruptLog(f"cannot read session log: {exc}") from exc
    for line in lines:
        if not line.strip():
            continue
        try:
            events.append(json.loads(line))
        except json.JSONDecodeError:
            break  # mid-stream tear: keep everything before it
    if not events:
        raise CorruptLog(f"session log {log_path} has no complete events")
    return events


def replay(log_path: str | Path) -> tuple[game.Posterior, game.KnowledgeMatrix, dict]:
    """Rebuild session state from its event log.

    Returns the reconstructed posterior, the knowledge matrix after any
    teach events, and a summary dict (state, asked, guess).
    """
    events = read_events(log_path)
    if events[0]["kind"] != "created":
        raise CorruptLog("first event must be 'created'")
    created = events[0]["payload"]
    kb = game.KnowledgeMatrix.from_json_dict(created["kb"])
    eps = created.get("eps", 0.0)
    posterior = game.uniform_posterior(kb)
    asked: list[tuple[str, str]] = []
    guess = None
    state = "asking"
    for event in events[1:]:
        kind, payload = event["kind"], event["payload"]
        if kind == "answer":
            posterior = game.update_posterior(
                posterior, kb, payload["feature"], payload["answer"], eps
            )
            asked.append((payload["feature"], payload["answer"]))
        elif kind == "guess":
            guess = payload["guess"]
            state = "guessed"
        elif kind == "teach":
            kb = game.teach(
                kb, payload["concept"], [(f["feature"], f["value"]) for f in payload["facts"]]
            )
            state = "done"
    return posterior, kb, {"state": state, "asked": asked, "guess": guess}


class EngineState:
    """Shared, read-mostly engine state; the knowledge matrix is the one
    mutable piece and is guarded by a writer lock."""

    def __init__(self, cfg: ServiceConfig):
        cfg.validate()
        self.cfg = cfg
        self.net: SemanticNetwork = ingest_network(cfg.triples_path, cfg.lexicon_path)
        self.stem_index = build_stem_index(self.net)
        self.inventory = (
            SynsetInventory.load(cfg.synsets_path) if cfg.synsets_path else None
        )
        self.counts: SynsetCountTable | None = None
        if self.inventory and cfg.reference_path:
            with open(cfg.reference_path, encoding="utf-8") as fh:
                self.counts = build_reference_counts(
                    [fh.read()], self.inventory, self.net, source=cfg.reference_path
                )
        self.kb = game.load_or_derive_matrix(cfg.kb_path, self.net)
        self.kb_lock = threading.Lock()
        self.sessions: dict[str, SessionRecord] = {}
        self.sessions_lock = threading.Lock()
        self.activation_cfg = ActivationConfig(
            **({"threshold": WSD_ACTIVATION.threshold} | cfg.activation)
        )
        self.data_dir = Path(cfg.data_dir)


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(cfg: ServiceConfig | None = None) -> FastAPI:
    state = EngineState(cfg or ServiceConfig())
    app = FastAPI(title="semmem", version="0.1.0")
    app.state.engine = state

    @app.exception_handler(RequestValidationError)
    async def bad_body(_req: Request, exc: RequestValidationError):
        return _error(400, "bad_request", str(exc.errors()[:1]))

    @app.exception_handler(NotFound)
    async def not_found(_req: Request, exc: NotFound):
        return _error(404, exc.code, str(exc))

    @app.exception_handler(SemmemError)
    async def domain_error(_req: Request, exc: SemmemError):
        return _error(422, exc.code, str(exc))

    @app.exception_handler(ValueError)
    async def value_error(_req: Request, exc: ValueError):
        return _error(422, "domain_error", str(exc))

    @app.exception_handler(PersistenceError)
    async def io_error(_req: Request, exc: PersistenceError):
        return _error(503, "persistence_unavailable", str(exc))

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "concepts": len(state.net)}

    @app.get("/v1/concepts/{concept_id}")
    def concept(concept_id: str):
        c = state.net.concept(concept_id)
        return {
            "id": c.id,
            "name": c.preferred_name,
            "forms": list(c.lexical_forms),
            "type": c.semantic_type,
            "neighbors": [
                {"target": t, "relation_type": rt, "weight": w, "polarity": pol}
                for t, rt, w, pol in neighbors(state.net, concept_id)
            ],
        }

    @app.post("/v1/enrich")
    def enrich(body: dict):
        docs_in = body.get("docs")
        if not isinstance(docs_in, list) or not docs_in:
            raise SemmemError("body must include a non-empty 'docs' list")
        corpus = [
            CorpusDoc(str(d["id"]), d.get("label"), str(d.get("text", "")))
            for d in docs_in
        ]
        exp_cfg = ExpansionConfig(
            relation_types=frozenset(body.get("relation_types") or DEFAULT_RELATION_TYPES),
            max_order=int(body.get("max_order", 1)),
            tau=body.get("tau"),
            metric=body.get("metric", coset.INFORMATION_GAIN),
        )
        gamma = float(body.get("gamma", coset.DEFAULT_GAMMA))
        documents = coset.documents_from_corpus(corpus, state.net)
        enriched, selected, table = coset.iterate_expansion(documents, state.net, exp_cfg)
        vectors = {c: coset.concept_vector(c, table, gamma) for c in sorted(selected)}
        doc_vectors = {}
        for d in enriched:
            if d.features:
                doc_vectors[d.doc_id] = coset.document_vector(d, vectors).values
        return {
            "docs": [
                {
                    "id": d.doc_id,
                    "label": d.label,
                    "features": [
                        {"concept": c, "order": o} for c, o in sorted(d.features)
                    ],
                }
                for d in enriched
            ],
            "selected": [
                {"concept": c, "order": o} for c, o in sorted(selected.items())
            ],
            "vectors": {k: doc_vectors[k] for k in sorted(doc_vectors)},
        }

    @app.post("/v1/wsd")
    def wsd_endpoint(body: dict):
        text = body.get("text", "")
        if not isinstance(text, str) or not text.strip():
            raise SemmemError("body must include non-empty 'text'")
        tokens = preprocess(text)
        mentions = map_concepts(tokens, state.net, stem_index=state.stem_index)
        if not mentions:
            return {"tokens": [t.surface for t in tokens], "mentions": [],
                    "graph": {"nodes": [], "edges": []}, "score": 0.0, "converged": True}
        graph = disambiguate_activation(mentions, state.net, state.activation_cfg)
        mention_rows = []
        for idx, m in enumerate(mentions):
            flags: list[str] = []
            synset = None
            if state.inventory and state.counts:
                from .wsd import _select_synset

                synset, flag_tuple = _select_synset(
                    graph.chosen[idx], state.inventory, state.counts, False
                )
                flags = list(flag_tuple)
            mention_rows.append(
                {
                    "span": list(m.span),
                    "surface": m.matched_surface,
                    "candidates": list(m.candidates),
                    "chosen": graph.chosen[idx],
                    "synset": synset,
                    "flags": flags,
                }
            )
        activation_top = sorted(
            graph.activation.coefficients.items(), key=lambda kv: (-kv[1], kv[0])
        )[:10]
        return {
            "tokens": [t.surface for t in tokens],
            "mentions": mention_rows,
            "graph": {
                "nodes": [
                    {"id": cid, "activation": graph.activation.coefficients.get(cid, 0.0)}
                    for cid in sorted(set(graph.chosen.values()))
                ],
                "edges": [
                    {
                        "source": r.source,
                        "target": r.target,
                        "relation_type": r.relation_type,
                        "weight": r.weight,
                    }
                    for r in graph.edges
                ],
            },
            "activation_top": [{"concept": c, "value": v} for c, v in activation_top],
            "score": graph.score,
            "converged": graph.converged,
        }

    @app.post("/v1/cluster")
    def cluster_endpoint(body: dict):
        vectors_in = body.get("vectors")
        if not isinstance(vectors_in, dict) or not vectors_in:
            raise SemmemError("body must include non-empty 'vectors'")
        k = int(body.get("k", 2))
        gold = body.get("gold")
        vectors = {}
        for doc_id, values in vectors_in.items():
            norm = sum(v * v for v in values.values()) ** 0.5
            if norm == 0:
                raise SemmemError(f"document {doc_id!r} has a zero vector")
            vectors[doc_id] = ConceptVector(
                {c: v / norm for c, v in values.items()}
            )
        result = cluster_documents(vectors, k, gold)
        doc_ids = sorted(vectors)
        from .cluster import cosine_distance_matrix

        D = cosine_distance_matrix([vectors[d] for d in doc_ids])
        dim = 2 if len(doc_ids) >= 3 else 1
        coords = mds_embed(D, dim) if len(doc_ids) >= 2 else [[0.0, 0.0]]
        coords_list = [
            [float(coords[i][0]), float(coords[i][1]) if dim > 1 else 0.0]
            for i in range(len(doc_ids))
        ]
        return {
            "doc_ids": doc_ids,
            "labels": {d: result.labels[d] for d in doc_ids},
            "k": result.k,
            "purity": result.purity,
            "ari": result.ari,
            "coords": coords_list,
        }

    @app.post("/v1/sessions")
    def create_session(body: dict | None = None):
        body = body or {}
        session_cfg = game.SessionConfig(
            budget=int(body.get("budget", 20)),
            guess_threshold=float(body.get("guess_threshold", 0.9)),
            eps=float(body.get("eps", 0.0)),
            seed=body.get("seed"),
        )
        with state.kb_lock:
            kb = state.kb
        session_id = str(uuid.uuid4())
        record = SessionRecord(
            session_id, kb, session_cfg,
            state.data_dir / "sessions" / f"{session_id}.jsonl",
        )
        record.append_event(
            "created",
            {
                "session_id": session_id,
                "budget": session_cfg.budget,
                "guess_threshold": session_cfg.guess_threshold,
                "eps": session_cfg.eps,
                "seed": session_cfg.seed,
                "kb_version": kb.version,
                "kb": kb.to_json_dict(),
            },
        )
        feature = game.best_question(record.posterior, kb, eps=session_cfg.eps)
        record.current_feature = feature
        record.append_event("question", {"feature": feature})
        with state.sessions_lock:
            state.sessions[session_id] = record
        return {
            "session_id": session_id,
            "state": record.state,
            "question": {"feature": feature, "text": kb.question_text(feature)},
            "posterior_top": record.posterior_top(),
            "budget": record.remaining_budget(),
        }

    def _get_session(session_id: str) -> SessionRecord:
        with state.sessions_lock:
            record = state.sessions.get(session_id)
        if record is None:
            raise NotFound(f"unknown session {session_id!r}")
        return record

    @app.post("/v1/sessions/{session_id}/answer")
    def answer_session(session_id: str, body: dict):
        record = _get_session(session_id)
        answer = body.get("answer")
        if answer not in game.ANSWERS:
            return _error(400, "bad_request", f"answer must be one of {game.ANSWERS}")
        if not record.lock.acquire(blocking=False):
            return _error(409, "conflict", "another answer for this session is in flight")
        try:
            if record.state != "asking":
                raise SemmemError(f"session is in state {record.state!r}, not asking")
            feature = record.current_feature
            record.posterior = game.update_posterior(
                record.posterior, record.kb, feature, answer, record.cfg.eps
            )
            record.asked.append((feature, answer))
            record.append_event("answer", {"feature": feature, "answer": answer})
            top_concept, top_prob = record.posterior.top(1)[0]
            response: dict = {
                "session_id": session_id,
                "posterior_top": record.posterior_top(),
                "asked": [{"feature": f, "answer": a} for f, a in record.asked],
                "budget": record.remaining_budget(),
                "contradiction": record.posterior.contradiction,
            }
            if top_prob >= record.cfg.guess_threshold or record.remaining_budget() <= 0:
                record.state = "guessed"
                record.guess = top_concept
                record.current_feature = None
                record.append_event("guess", {"guess": top_concept})
                response["state"] = "guessed"
                response["guess"] = {
                    "concept": top_concept,
                    "name": top_concept,
                    "prob": top_prob,
                }
            else:
                feature = game.best_question(record.posterior, record.kb, eps=record.cfg.eps)
                record.current_feature = feature
                record.append_event("question", {"feature": feature})
                response["state"] = "asking"
                response["question"] = {
                    "feature": feature,
                    "text": record.kb.question_text(feature),
                }
            return response
        finally:
            record.lock.release()

    @app.post("/v1/sessions/{session_id}/teach")
    def teach_session(session_id: str, body: dict):
        record = _get_session(session_id)
        concept = body.get("concept")
        facts_in = body.get("facts")
        if not concept or not isinstance(facts_in, list):
            return _error(400, "bad_request", "body needs 'concept' and 'facts'")
        try:
            facts = [(str(f["feature"]), float(f["value"])) for f in facts_in]
        except (KeyError, TypeError, ValueError):
            return _error(400, "bad_request", "facts need 'feature' and numeric 'value'")
        with state.kb_lock:
            state.kb = game.teach(state.kb, concept, facts)
            version = state.kb.version
        record.kb = game.teach(record.kb, concept, facts)
        record.state = "done"
        record.append_event("teach", {"concept": concept, "facts": [
            {"feature": f, "value": v} for f, v in facts
        ]})
        return {"ok": True, "matrix_version": version, "state": record.state}

    @app.post("/v1/generate")
    def generate_endpoint(body: dict):
        morphemes = body.get("morphemes")
        if not isinstance(morphemes, list) or len(morphemes) < 2:
            raise SemmemError("body must include >= 2 'morphemes'")
        count = int(body.get("count", 10))
        seed = int(body.get("seed", state.cfg.default_seed))
        lexicon = frozenset(s for s in state.net.lexicon if " " not in s)
        model = neologism.train_ngram(sorted(lexicon), n=3, alpha=0.1)
        candidates = neologism.generate(
            model, [str(m) for m in morphemes], count, seed=seed, lexicon=lexicon
        )
        novel = neologism.filter_novel(candidates, lexicon)
        return {"candidates": [c.to_json_dict() for c in novel]}

    if state.cfg.static_dir and os.path.isdir(state.cfg.static_dir):
        app.mount("/", StaticFiles(directory=state.cfg.static_dir, html=True), name="ui")

    return app
