"""Typed, weighted, signed concept graph plus surface-form lexicon.

The network is the system's semantic memory: concepts, relations between
them, and a lexicon mapping surface strings (including multi-token
collocations) to candidate concepts.  Networks are immutable after load
and safe to share across threads.

File formats
------------
Triples (UTF-8 TSV, ``#`` starts a comment line)::

    source<TAB>relation_type<TAB>target[<TAB>weight[<TAB>polarity]]

Concepts / lexicon (JSONL, two record kinds in one file)::

    {"id": "ball_toy", "name": "ball", "forms": ["ball", "balls"], "type": "object"}
    {"surface": "coffee maker", "concept": "coffee_maker", "is_collocation": true}
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field

from .errors import IngestError, NotFound

EXCITATORY = "excitatory"
INHIBITORY = "inhibitory"

# Sense siblings (concepts sharing a surface form) compete; ingest wires the
# competition explicitly so downstream activation code needs no special case.
DEFAULT_INHIBITION_WEIGHT = 0.8
DEFAULT_INHIBITION_RELATION = "competes_with"
DEFAULT_WEIGHT = 1.0


def normalize_surface(surface: str) -> str:
    """NFC-normalize, lowercase, and collapse internal whitespace."""
    folded = unicodedata.normalize("NFC", surface).lower()
    return " ".join(folded.split())


def normalize_concept_id(value: str) -> str:
    norm = unicodedata.normalize("NFC", value).lower()
    if not norm or any(ch.isspace() for ch in norm):
        raise IngestError(f"invalid concept id {value!r}: must be non-empty, no whitespace")
    return norm


@dataclass(frozen=True)
class Concept:
    id: str
    preferred_name: str
    lexical_forms: tuple[str, ...]
    semantic_type: str = ""


@dataclass(frozen=True)
class Relation:
    source: str
    relation_type: str
    target: str
    weight: float
    polarity: str = EXCITATORY


@dataclass(frozen=True)
class SemanticNetwork:
    """Immutable concept graph.  Build via ingest_network or build_network."""

    concepts: dict[str, Concept]
    out_edges: dict[str, tuple[Relation, ...]]
    in_edges: dict[str, tuple[Relation, ...]]
    lexicon: dict[str, tuple[str, ...]]
    collocations: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __contains__(self, concept_id: str) -> bool:
        return concept_id in self.concepts

    def __len__(self) -> int:
        return len(self.concepts)

    @property
    def node_ids(self) -> list[str]:
        return sorted(self.concepts)

    def concept(self, concept_id: str) -> Concept:
        try:
            return self.concepts[concept_id]
        except KeyError:
            raise NotFound(f"unknown concept {concept_id!r}") from None

    def out_degree(self, concept_id: str) -> int:
        return len(self.out_edges.get(concept_id, ()))

    def in_degree(self, concept_id: str) -> int:
        return len(self.in_edges.get(concept_id, ()))

    def relations(self) -> list[Relation]:
        out = []
        for cid in sorted(self.out_edges):
            out.extend(self.out_edges[cid])
        return out


def build_network(
    concepts: list[Concept],
    relations: list[Relation],
    extra_surfaces: list[tuple[str, str]] | None = None,
    inhibition_weight: float = DEFAULT_INHIBITION_WEIGHT,
    inhibition_relation: str = DEFAULT_INHIBITION_RELATION,
) -> SemanticNetwork:
    """Assemble a network from in-memory parts, applying the merge and
    auto-inhibition policies.

    ``extra_surfaces`` is a list of (surface, concept_id) pairs beyond the
    concepts' own lexical forms (collocations usually arrive this way).
    Duplicate (source, relation_type, target) triples keep the max weight.
    """
    concept_map: dict[str, Concept] = {}
    for c in concepts:
        if c.id in concept_map:
            raise IngestError(f"duplicate concept id {c.id!r}")
        if not c.lexical_forms:
            raise IngestError(f"concept {c.id!r} has no lexical forms")
        if c.preferred_name not in c.lexical_forms:
            raise IngestError(f"concept {c.id!r}: preferred name not among lexical forms")
        concept_map[c.id] = c

    # Lexicon: surface -> sorted tuple of concept ids
    surf_map: dict[str, set[str]] = {}
    for c in concept_map.values():
        for form in c.lexical_forms:
            surf_map.setdefault(normalize_surface(form), set()).add(c.id)
    for surface, cid in extra_surfaces or []:
        if cid not in concept_map:
            raise IngestError(f"lexicon surface {surface!r} references unknown concept {cid!r}")
        surf_map.setdefault(normalize_surface(surface), set()).add(cid)

    # Auto-inhibition between sense siblings, both directions.
    auto: list[Relation] = []
    for surface, ids in surf_map.items():
        if len(ids) < 2:
            continue
        ordered = sorted(ids)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1:]:
                auto.append(Relation(a, inhibition_relation, b, inhibition_weight, INHIBITORY))
                auto.append(Relation(b, inhibition_relation, a, inhibition_weight, INHIBITORY))

    # Merge duplicates keeping max weight; equal weights prefer excitatory
    # so the outcome never depends on input order.
    merged: dict[tuple[str, str, str], Relation] = {}
    for rel in list(relations) + auto:
        for endpoint in (rel.source, rel.target):
            if endpoint not in concept_map:
                raise IngestError(f"relation references undeclared concept {endpoint!r}")
        if not (0.0 < rel.weight <= 1.0) or rel.weight != rel.weight:
            raise IngestError(
                f"relation {rel.source}->{rel.target}: weight {rel.weight} outside (0, 1]"
            )
        if rel.polarity not in (EXCITATORY, INHIBITORY):
            raise IngestError(f"unknown polarity {rel.polarity!r}")
        key = (rel.source, rel.relation_type, rel.target)
        prev = merged.get(key)
        if prev is None or (rel.weight, rel.polarity == EXCITATORY) > (
            prev.weight,
            prev.polarity == EXCITATORY,
        ):
            merged[key] = rel

    out: dict[str, list[Relation]] = {cid: [] for cid in concept_map}
    inc: dict[str, list[Relation]] = {cid: [] for cid in concept_map}
    for key in sorted(merged):
        rel = merged[key]
        out[rel.source].append(rel)
        inc[rel.target].append(rel)

    sort_key = lambda r: (r.relation_type, r.target, r.source)
    return SemanticNetwork(
        concepts=concept_map,
        out_edges={cid: tuple(sorted(edges, key=sort_key)) for cid, edges in out.items()},
        in_edges={cid: tuple(sorted(edges, key=sort_key)) for cid, edges in inc.items()},
        lexicon={s: tuple(sorted(ids)) for s, ids in sorted(surf_map.items())},
        collocations={
            s: tuple(sorted(ids)) for s, ids in sorted(surf_map.items()) if " " in s
        },
    )


def _parse_concept_record(rec: dict, where: str) -> Concept:
    try:
        cid = normalize_concept_id(rec["id"])
        name = rec["name"]
        forms = list(rec.get("forms") or [name])
    except KeyError as exc:
        raise IngestError(f"{where}: concept record missing field {exc}") from None
    if name not in forms:
        forms.insert(0, name)
    return Concept(
        id=cid,
        preferred_name=name,
        lexical_forms=tuple(forms),
        semantic_type=rec.get("type", ""),
    )


def ingest_network(
    triples_path: str,
    lexicon_path: str,
    inhibition_weight: float = DEFAULT_INHIBITION_WEIGHT,
    inhibition_relation: str = DEFAULT_INHIBITION_RELATION,
) -> SemanticNetwork:
    """Load a network from a triples TSV and a concepts/lexicon JSONL file.

    The lexicon file declares concepts (records with ``id``) and may add
    extra surface mappings (records with ``surface``).  Raises IngestError
    with file and line number on malformed input.
    """
    concepts: list[Concept] = []
    extra_surfaces: list[tuple[str, str]] = []
    with open(lexicon_path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            where = f"{lexicon_path}:{lineno}"
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"{where}: invalid JSON ({exc.msg})") from None
            if "id" in rec:
                concepts.append(_parse_concept_record(rec, where))
            elif "surface" in rec:
                try:
                    extra_surfaces.append((rec["surface"], normalize_concept_id(rec["concept"])))
                except KeyError:
                    raise IngestError(f"{where}: surface record missing 'concept'") from None
            else:
                raise IngestError(f"{where}: record is neither a concept nor a surface")
    if not concepts and not extra_surfaces:
        raise IngestError(f"{lexicon_path}: empty lexicon")

    relations: list[Relation] = []
    with open(triples_path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split("\t")
            if len(parts) < 3 or len(parts) > 5:
                raise IngestError(
                    f"{triples_path}:{lineno}: expected 3-5 tab-separated fields, got {len(parts)}"
                )
            source, rtype, target = parts[0], parts[1], parts[2]
            weight = DEFAULT_WEIGHT
            polarity = EXCITATORY
            if len(parts) >= 4:
                try:
                    weight = float(parts[3])
                except ValueError:
                    raise IngestError(
                        f"{triples_path}:{lineno}: weight {parts[3]!r} is not a number"
                    ) from None
            if len(parts) == 5:
                polarity = parts[4]
            relations.append(
                Relation(
                    normalize_concept_id(source),
                    rtype,
                    normalize_concept_id(target),
                    weight,
                    polarity,
                )
            )

    return build_network(
        concepts,
        relations,
        extra_surfaces,
        inhibition_weight=inhibition_weight,
        inhibition_relation=inhibition_relation,
    )


def neighbors(
    net: SemanticNetwork,
    concept_id: str,
    relation_filter: set[str] | None = None,
) -> list[tuple[str, str, float, str]]:
    """Outgoing edges of a concept as (target, relation_type, weight, polarity),
    sorted by (relation_type, target)."""
    if concept_id not in net.concepts:
        raise NotFound(f"unknown concept {concept_id!r}")
    rows = [
        (r.target, r.relation_type, r.weight, r.polarity)
        for r in net.out_edges.get(concept_id, ())
        if relation_filter is None or r.relation_type in relation_filter
    ]
    rows.sort(key=lambda row: (row[1], row[0]))
    return rows


def lookup(net: SemanticNetwork, surface: str) -> list[str]:
    """Concept ids whose lexical forms contain the normalized surface."""
    return list(net.lexicon.get(normalize_surface(surface), ()))


def to_json(net: SemanticNetwork) -> str:
    """Canonical serialization; byte-identical for identical networks."""
    doc = {
        "concepts": [
            {
                "id": c.id,
                "name": c.preferred_name,
                "forms": list(c.lexical_forms),
                "type": c.semantic_type,
            }
            for c in (net.concepts[cid] for cid in sorted(net.concepts))
        ],
        "relations": [
            {
                "source": r.source,
                "relation_type": r.relation_type,
                "target": r.target,
                "weight": r.weight,
                "polarity": r.polarity,
            }
            for r in net.relations()
        ],
        "lexicon": {s: list(ids) for s, ids in sorted(net.lexicon.items())},
    }
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def from_json(text: str) -> SemanticNetwork:
    doc = json.loads(text)
    concepts = [
        Concept(
            id=rec["id"],
            preferred_name=rec["name"],
            lexical_forms=tuple(rec["forms"]),
            semantic_type=rec.get("type", ""),
        )
        for rec in doc["concepts"]
    ]
    relations = [
        Relation(r["source"], r["relation_type"], r["target"], r["weight"], r["polarity"])
        for r in doc["relations"]
    ]
    extra = [
        (surface, cid)
        for surface, ids in doc.get("lexicon", {}).items()
        for cid in ids
    ]
    # Auto-inhibition edges are already present in the serialized relations;
    # re-adding them is a no-op under the max-merge policy.
    return build_network(concepts, relations, extra)
