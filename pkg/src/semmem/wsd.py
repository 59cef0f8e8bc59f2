"""Word-sense disambiguation.

Two procedures:

* activation-based: seed every sense candidate, spread activation to a
  quasi-stationary state, and let sense siblings compete; the survivors
  form a graph of consistent concepts.
* reference-corpus synset counting: scan a reference corpus, count how
  often each synset's member concepts occur, then tag a target text with
  the highest-count synsets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .activation import ActivationConfig, ActivationState, ActivationVector, propagate, snapshot
from .errors import EmptyReferenceCorpus, IngestError
from .network import Relation, SemanticNetwork
from .textproc import ConceptMention, StemIndex, Token, build_stem_index, map_concepts, preprocess

# Sense competition wants a sharper ignition gate than generic propagation:
# nodes pumped only by a half-seeded sense stay below the threshold and never
# resonate, so context the text actually mentions decides the winner.
WSD_ACTIVATION = ActivationConfig(threshold=0.25)


@dataclass(frozen=True)
class Synset:
    id: str
    members: tuple[str, ...]
    gloss: str | None = None


@dataclass(frozen=True)
class SynsetInventory:
    synsets: dict[str, Synset]
    by_concept: dict[str, tuple[str, ...]]  # concept -> sorted synset ids

    @classmethod
    def from_synsets(cls, synsets: list[Synset]) -> "SynsetInventory":
        table: dict[str, Synset] = {}
        by_concept: dict[str, set[str]] = {}
        for s in synsets:
            if s.id in table:
                raise IngestError(f"duplicate synset id {s.id!r}")
            if not s.members:
                raise IngestError(f"synset {s.id!r} has no members")
            table[s.id] = s
            for m in s.members:
                by_concept.setdefault(m, set()).add(s.id)
        return cls(
            synsets=table,
            by_concept={c: tuple(sorted(ids)) for c, ids in sorted(by_concept.items())},
        )

    @classmethod
    def load(cls, path: str) -> "SynsetInventory":
        synsets = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    synsets.append(
                        Synset(rec["id"], tuple(rec["members"]), rec.get("gloss"))
                    )
                except (json.JSONDecodeError, KeyError) as exc:
                    raise IngestError(f"{path}:{lineno}: bad synset record ({exc})") from None
        return cls.from_synsets(synsets)


@dataclass
class SynsetCountTable:
    counts: dict[str, int]
    source: str = ""

    def total(self) -> int:
        return sum(self.counts.values())


@dataclass
class ConsistentConceptGraph:
    chosen: dict[int, str]            # mention index -> concept id
    edges: tuple[Relation, ...]
    score: float
    converged: bool
    activation: ActivationVector = field(default_factory=ActivationVector)


def disambiguate_activation(
    mentions: list[ConceptMention],
    net: SemanticNetwork,
    cfg: ActivationConfig | None = None,
) -> ConsistentConceptGraph:
    """Resolve each mention to one concept by activation competition.

    Every candidate of a mention is seeded at 1/len(candidates) (so an
    unambiguous mention seeds its concept at 1); activation spreads to
    convergence; per mention the most active candidate wins, ties broken
    toward the lexicographically smallest id.  Winners are determined on
    the converged state simultaneously, so mention order never matters.
    """
    if not mentions:
        raise ValueError("mentions must be non-empty")
    cfg = cfg or WSD_ACTIVATION
    seeds: dict[str, float] = {}
    for m in mentions:
        share = 1.0 / len(m.candidates)
        for cid in m.candidates:
            seeds[cid] = min(seeds.get(cid, 0.0) + share, cfg.a_max)

    state = propagate(net, seeds, cfg)

    chosen: dict[int, str] = {}
    for idx, m in enumerate(mentions):
        winner = max(sorted(m.candidates), key=lambda cid: state.activations[cid])
        chosen[idx] = winner

    chosen_set = set(chosen.values())
    suppressed = dict(state.activations)
    for m in mentions:
        for cid in m.candidates:
            if cid not in chosen_set:
                suppressed[cid] = 0.0
    final_state = ActivationState(suppressed, state.iteration, state.converged)

    edges = tuple(
        rel
        for cid in sorted(chosen_set)
        for rel in net.out_edges.get(cid, ())
        if rel.target in chosen_set
    )
    score = sum(state.activations[cid] for cid in chosen.values())
    return ConsistentConceptGraph(
        chosen=chosen,
        edges=edges,
        score=score,
        converged=state.converged,
        activation=snapshot(final_state),
    )


def build_reference_counts(
    reference_texts: list[str],
    inventory: SynsetInventory,
    net: SemanticNetwork,
    stoplist: frozenset[str] | None = None,
    max_senses: int = 8,
    source: str = "",
) -> SynsetCountTable:
    """Scan the reference corpus and count synset activations.

    Every candidate concept of every mention counts as one occurrence,
    and each synset containing that concept is incremented once per
    occurrence.  All inventory synsets start at zero.
    """
    if not reference_texts or all(not t.strip() for t in reference_texts):
        raise EmptyReferenceCorpus("reference corpus has no text")
    counts = {sid: 0 for sid in inventory.synsets}
    index = build_stem_index(net)
    for text in reference_texts:
        tokens = preprocess(text, stoplist)
        for mention in map_concepts(tokens, net, max_senses, stem_index=index):
            for cid in mention.candidates:
                for sid in inventory.by_concept.get(cid, ()):
                    counts[sid] += 1
    return SynsetCountTable(counts=counts, source=source)


@dataclass
class TaggedToken:
    position: int
    surface: str
    stem: str
    concept: str | None = None
    synset: str | None = None
    flags: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "position": self.position,
            "surface": self.surface,
            "stem": self.stem,
            "concept": self.concept,
            "synset": self.synset,
            "flags": list(self.flags),
        }


def _select_synset(
    concept: str, inventory: SynsetInventory, counts: SynsetCountTable,
    normalize_by_size: bool,
) -> tuple[str | None, tuple[str, ...]]:
    candidate_ids = inventory.by_concept.get(concept, ())
    if not candidate_ids:
        return None, ("unseen",)
    if len(candidate_ids) == 1:
        sid = candidate_ids[0]
        flags = () if counts.counts.get(sid, 0) > 0 else ("unseen",)
        return sid, flags
    counted = [sid for sid in candidate_ids if counts.counts.get(sid, 0) > 0]
    if not counted:
        return None, ("unseen",)

    def score(sid: str) -> float:
        n = counts.counts[sid]
        return n / len(inventory.synsets[sid].members) if normalize_by_size else n

    best = max(score(sid) for sid in counted)
    top = sorted(sid for sid in counted if score(sid) == best)
    flags = ("tie",) if len(top) > 1 else ()
    return top[0], flags


def annotate_synsets(
    text: str,
    counts: SynsetCountTable,
    inventory: SynsetInventory,
    net: SemanticNetwork,
    cfg: ActivationConfig | None = None,
    stoplist: frozenset[str] | None = None,
    max_senses: int = 8,
    normalize_by_size: bool = False,
) -> list[TaggedToken]:
    """Tag a target text with synsets chosen by reference-corpus counts.

    Mentions are first resolved to concepts by activation competition
    (the fallback the tagged output keeps when no counted synset covers
    the concept).  ``normalize_by_size`` divides counts by synset size,
    off by default.
    """
    tokens = preprocess(text, stoplist)
    mentions = map_concepts(tokens, net, max_senses)
    tagged = [
        TaggedToken(position=t.position, surface=t.surface, stem=t.stem) for t in tokens
    ]
    if not mentions:
        return tagged
    graph = disambiguate_activation(mentions, net, cfg)
    for idx, mention in enumerate(mentions):
        concept = graph.chosen[idx]
        synset, flags = _select_synset(concept, inventory, counts, normalize_by_size)
        for pos in range(*mention.span):
            tagged[pos].concept = concept
            tagged[pos].synset = synset
            tagged[pos].flags = flags
    return tagged
