"""Active 20-questions dialogue over semantic memory.

Question selection maximizes expected information gain of the posterior
under an answer-noise model; answers update the posterior by Bayes rule.
``teach`` grows the knowledge matrix from dialogue, which is how the
system acquires facts it cannot read off the network.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from math import log2

import numpy as np

from .errors import Exhausted, IngestError, NotFound
from .network import EXCITATORY, SemanticNetwork

YES, NO, UNKNOWN = "yes", "no", "unknown"
ANSWERS = (YES, NO, UNKNOWN)

# New matrix cells created by teach default to "could go either way".
TEACH_DEFAULT = 0.5


@dataclass(frozen=True)
class Feature:
    id: str
    question_text: str = ""


@dataclass(frozen=True)
class KnowledgeMatrix:
    concepts: tuple[str, ...]
    features: tuple[Feature, ...]
    p_yes: np.ndarray  # shape (len(concepts), len(features)), values in [0, 1]
    version: int = 0

    def __post_init__(self):
        if self.p_yes.shape != (len(self.concepts), len(self.features)):
            raise ValueError("p_yes shape does not match concept/feature lists")
        if self.p_yes.size and (np.min(self.p_yes) < 0 or np.max(self.p_yes) > 1):
            raise ValueError("p_yes entries must lie in [0, 1]")

    def concept_index(self, concept: str) -> int:
        try:
            return self.concepts.index(concept)
        except ValueError:
            raise NotFound(f"unknown concept {concept!r}") from None

    def feature_index(self, feature_id: str) -> int:
        for i, f in enumerate(self.features):
            if f.id == feature_id:
                return i
        raise NotFound(f"unknown feature {feature_id!r}")

    def question_text(self, feature_id: str) -> str:
        f = self.features[self.feature_index(feature_id)]
        return f.question_text or f"Does it have {f.id}?"

    def to_json_dict(self) -> dict:
        return {
            "concepts": list(self.concepts),
            "features": [
                {"id": f.id, "question_text": f.question_text} for f in self.features
            ],
            "p_yes": [[float(v) for v in row] for row in self.p_yes],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "KnowledgeMatrix":
        try:
            concepts = tuple(doc["concepts"])
            features = tuple(
                Feature(f["id"], f.get("question_text", "")) for f in doc["features"]
            )
            p_yes = np.asarray(doc["p_yes"], dtype=np.float64)
        except (KeyError, TypeError) as exc:
            raise IngestError(f"bad knowledge matrix: {exc}") from None
        if p_yes.size == 0:
            p_yes = p_yes.reshape(len(concepts), len(features))
        return cls(concepts=concepts, features=features, p_yes=p_yes)

    @classmethod
    def load(cls, path: str) -> "KnowledgeMatrix":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))


def matrix_from_network(net: SemanticNetwork) -> KnowledgeMatrix:
    """Derive questionable features from the network: one feature per
    (relation_type, target) pair, p_yes=1 where the edge exists else 0."""
    concepts = tuple(sorted(net.concepts))
    pairs = sorted(
        {
            (r.relation_type, r.target)
            for cid in concepts
            for r in net.out_edges.get(cid, ())
            if r.polarity == EXCITATORY
        }
    )
    features = tuple(
        Feature(
            id=f"{rt}:{target}",
            question_text=f"Is it linked to {net.concepts[target].preferred_name} ({rt})?",
        )
        for rt, target in pairs
    )
    p_yes = np.zeros((len(concepts), len(features)))
    index = {f.id: i for i, f in enumerate(features)}
    for ci, cid in enumerate(concepts):
        for r in net.out_edges.get(cid, ()):
            if r.polarity == EXCITATORY:
                p_yes[ci, index[f"{r.relation_type}:{r.target}"]] = 1.0
    return KnowledgeMatrix(concepts=concepts, features=features, p_yes=p_yes)


@dataclass
class Posterior:
    probs: dict[str, float]
    contradiction: bool = False

    def top(self, limit: int = 10) -> list[tuple[str, float]]:
        return sorted(self.probs.items(), key=lambda kv: (-kv[1], kv[0]))[:limit]

    def argmax(self) -> str:
        return self.top(1)[0][0]


def uniform_posterior(kb: KnowledgeMatrix) -> Posterior:
    if not kb.concepts:
        raise ValueError("knowledge matrix has no concepts")
    p = 1.0 / len(kb.concepts)
    return Posterior({c: p for c in kb.concepts})


def _entropy(probs) -> float:
    return -sum(p * log2(p) for p in probs if p > 0.0)


def _likelihood_yes(p_yes: np.ndarray, eps: float) -> np.ndarray:
    return (1.0 - eps) * p_yes + eps * (1.0 - p_yes)


def expected_gains(
    posterior: Posterior, kb: KnowledgeMatrix, eps: float = 0.0
) -> dict[str, float]:
    """Expected entropy reduction per feature under the noisy answer model."""
    prior = np.array([posterior.probs.get(c, 0.0) for c in kb.concepts])
    h_prior = _entropy(prior)
    gains: dict[str, float] = {}
    for fi, feature in enumerate(kb.features):
        like_yes = _likelihood_yes(kb.p_yes[:, fi], eps)
        p_answer_yes = float(prior @ like_yes)
        expected_h = 0.0
        for p_answer, like in (
            (p_answer_yes, like_yes),
            (1.0 - p_answer_yes, 1.0 - like_yes),
        ):
            if p_answer <= 0.0:
                continue
            post = prior * like / p_answer
            expected_h += p_answer * _entropy(post)
        gains[feature.id] = max(0.0, h_prior - expected_h)
    return gains


def best_question(
    posterior: Posterior,
    kb: KnowledgeMatrix,
    excluded: set[str] | frozenset[str] = frozenset(),
    eps: float = 0.0,
) -> str:
    """Feature with maximal expected information gain; ties go to the
    smallest feature id.  Raises Exhausted when everything is excluded."""
    gains = expected_gains(posterior, kb, eps)
    candidates = [f.id for f in kb.features if f.id not in excluded]
    if not candidates:
        raise Exhausted("all features excluded")
    return max(sorted(candidates), key=lambda fid: gains[fid])


def update_posterior(
    posterior: Posterior,
    kb: KnowledgeMatrix,
    feature_id: str,
    answer: str,
    eps: float = 0.0,
) -> Posterior:
    """Bayes update under the epsilon-noisy answer model.

    ``unknown`` is non-informative (likelihood 1).  A zero total mass
    resets to uniform and flags the contradiction.
    """
    if answer not in ANSWERS:
        raise ValueError(f"answer must be one of {ANSWERS}")
    fi = kb.feature_index(feature_id)
    if answer == UNKNOWN:
        return Posterior(dict(posterior.probs), contradiction=posterior.contradiction)
    like_yes = _likelihood_yes(kb.p_yes[:, fi], eps)
    like = like_yes if answer == YES else 1.0 - like_yes
    masses = {
        c: posterior.probs.get(c, 0.0) * float(like[i])
        for i, c in enumerate(kb.concepts)
    }
    total = sum(masses.values())
    if total <= 0.0:
        return Posterior(
            {c: 1.0 / len(kb.concepts) for c in kb.concepts}, contradiction=True
        )
    return Posterior({c: m / total for c, m in masses.items()})


@dataclass(frozen=True)
class SessionConfig:
    budget: int = 20
    guess_threshold: float = 0.9
    eps: float = 0.0
    seed: int | None = None
    exclude_asked: bool = False

    def __post_init__(self):
        if not 0.0 <= self.eps < 0.5:
            raise ValueError("eps must be in [0, 0.5)")
        if self.budget < 0:
            raise ValueError("budget must be >= 0")


@dataclass
class Session:
    id: str
    posterior: Posterior
    asked: list[tuple[str, str]] = field(default_factory=list)
    state: str = "asking"  # asking -> guessed -> done
    budget: int = 20
    eps: float = 0.0
    seed: int | None = None


def run_session(
    kb: KnowledgeMatrix,
    oracle,
    cfg: SessionConfig | None = None,
) -> tuple[str, list[dict]]:
    """Drive a full session against an answer source.

    ``oracle`` is a callable feature_id -> "yes" | "no" | "unknown".
    Stops when the posterior peaks above the guess threshold or the
    question budget runs out; the guess is the argmax concept.
    """
    cfg = cfg or SessionConfig()
    posterior = uniform_posterior(kb)
    transcript: list[dict] = []
    excluded: set[str] = set()
    asked = 0
    while asked < cfg.budget and posterior.top(1)[0][1] < cfg.guess_threshold:
        try:
            feature_id = best_question(posterior, kb, excluded, cfg.eps)
        except Exhausted:
            break
        answer = oracle(feature_id)
        posterior = update_posterior(posterior, kb, feature_id, answer, cfg.eps)
        transcript.append(
            {
                "feature": feature_id,
                "answer": answer,
                "posterior_max": posterior.top(1)[0][1],
                "contradiction": posterior.contradiction,
            }
        )
        if cfg.exclude_asked:
            excluded.add(feature_id)
        asked += 1
    guess = posterior.argmax()
    transcript.append({"guess": guess, "questions": asked})
    return guess, transcript


def teach(
    kb: KnowledgeMatrix,
    concept: str,
    facts: list[tuple[str, float]],
) -> KnowledgeMatrix:
    """Insert or update answer probabilities; unknown concepts and
    features are created on the fly (new cells default to 0.5)."""
    for fid, value in facts:
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"fact {fid!r}: value {value} outside [0, 1]")
    concepts = list(kb.concepts)
    features = list(kb.features)
    p = kb.p_yes
    if concept not in concepts:
        concepts.append(concept)
        p = np.vstack([p, np.full((1, p.shape[1]), TEACH_DEFAULT)]) if p.size else np.full(
            (1, len(features)), TEACH_DEFAULT
        )
    known = {f.id for f in features}
    for fid, _ in facts:
        if fid not in known:
            features.append(Feature(fid))
            known.add(fid)
            p = np.hstack([p, np.full((p.shape[0], 1), TEACH_DEFAULT)])
    ci = concepts.index(concept)
    fmap = {f.id: i for i, f in enumerate(features)}
    p = p.copy()
    for fid, value in facts:
        p[ci, fmap[fid]] = value
    return KnowledgeMatrix(
        concepts=tuple(concepts),
        features=tuple(features),
        p_yes=p,
        version=kb.version + 1,
    )


class ScriptedOracle:
    """Answers straight from a concept's row; optional seeded noise."""

    def __init__(self, kb: KnowledgeMatrix, true_concept: str,
                 eps: float = 0.0, seed: int = 0):
        self._kb = kb
        self._row = kb.p_yes[kb.concept_index(true_concept)]
        self._eps = eps
        self._rng = random.Random(seed)

    def __call__(self, feature_id: str) -> str:
        p = float(self._row[self._kb.feature_index(feature_id)])
        truthful = YES if self._rng.random() < p else NO
        if self._eps and self._rng.random() < self._eps:
            return NO if truthful == YES else YES
        return truthful


def load_or_derive_matrix(path: str | None, net: SemanticNetwork | None) -> KnowledgeMatrix:
    if path:
        return KnowledgeMatrix.load(path)
    if net is None:
        raise ValueError("need a knowledge matrix path or a network to derive one")
    return matrix_from_network(net)


__all__ = [
    "ANSWERS", "Feature", "KnowledgeMatrix", "Posterior", "ScriptedOracle",
    "Session", "SessionConfig", "best_question", "expected_gains",
    "load_or_derive_matrix", "matrix_from_network", "run_session",
    "teach", "uniform_posterior", "update_posterior",
]
