"""Coset-based text enrichment.

A coset is the set of concepts reachable from an owner concept through
selected excitatory relation types.  Documents are enriched order by
order: cosets of the currently selected features are added, features are
ranked against the document labels, and weak additions are pruned.
Original (order-0) features are never removed.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .errors import DegenerateLabels, EmptyDocument, NotFound
from .network import EXCITATORY, SemanticNetwork

INFORMATION_GAIN = "information_gain"
CHI_SQUARE = "chi_square"

DEFAULT_GAMMA = 0.5
DEFAULT_TOP_FEATURES = 200  # fallback pruning when no threshold is given


@dataclass(frozen=True)
class CosetMember:
    concept: str
    relation_type: str
    weight: float
    order: int


@dataclass(frozen=True)
class Coset:
    owner: str
    members: tuple[CosetMember, ...]


@dataclass
class EnhancedDocument:
    doc_id: str
    label: str | None
    features: list[tuple[str, int]]  # multiset of (concept, order)

    def order0(self) -> list[str]:
        return [c for c, k in self.features if k == 0]

    def concepts(self) -> set[str]:
        return {c for c, _ in self.features}


@dataclass(frozen=True)
class ConceptVector:
    values: dict[str, float]

    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.values.values()))

    def dot(self, other: "ConceptVector") -> float:
        a, b = self.values, other.values
        if len(a) > len(b):
            a, b = b, a
        return sum(v * b.get(k, 0.0) for k, v in a.items())


@dataclass(frozen=True)
class CooccurrenceVector:
    values: dict[str, int]
    window: int


@dataclass(frozen=True)
class ExpansionConfig:
    relation_types: frozenset[str]
    max_order: int = 1
    tau: float | None = None
    metric: str = INFORMATION_GAIN

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be >= 1")
        if self.tau is not None and self.tau < 0:
            raise ValueError("tau must be >= 0")
        if self.metric not in (INFORMATION_GAIN, CHI_SQUARE):
            raise ValueError(f"unknown metric {self.metric!r}")


def build_coset(
    net: SemanticNetwork,
    owner: str,
    relation_types: set[str] | frozenset[str],
    order: int = 1,
) -> Coset:
    """First-order coset: excitatory out-neighbors through enabled relation
    types.  Inhibitory edges never contribute."""
    if owner not in net.concepts:
        raise NotFound(f"unknown concept {owner!r}")
    members = [
        CosetMember(rel.target, rel.relation_type, rel.weight, order)
        for rel in net.out_edges.get(owner, ())
        if rel.polarity == EXCITATORY
        and rel.relation_type in relation_types
        and rel.target != owner
    ]
    members.sort(key=lambda m: (m.concept, m.relation_type))
    return Coset(owner=owner, members=tuple(members))


def _entropy(counts: Counter) -> float:
    total = sum(counts.values())
    if total == 0:
        return 0.0
    h = 0.0
    for c in counts.values():
        if c:
            p = c / total
            h -= p * math.log2(p)
    return h


def rank_features(docs: list[EnhancedDocument], metric: str = INFORMATION_GAIN) -> dict[str, float]:
    """Score every feature (concept) against the document labels.

    information_gain: H(labels) - sum_v p(v) H(labels | presence v)
    chi_square: standard 2 x C contingency statistic.
    """
    if any(d.label is None for d in docs):
        raise DegenerateLabels("every document must be labeled")
    labels = [d.label for d in docs]
    if len(set(labels)) < 2:
        raise DegenerateLabels("need at least two distinct labels")

    n = len(docs)
    label_counts = Counter(labels)
    features = sorted({c for d in docs for c in d.concepts()})
    presence = {f: [f in d.concepts() for d in docs] for f in features}

    scores: dict[str, float] = {}
    if metric == INFORMATION_GAIN:
        h_labels = _entropy(label_counts)
        for f in features:
            present = Counter()
            absent = Counter()
            for has, label in zip(presence[f], labels):
                (present if has else absent)[label] += 1
            n_p, n_a = sum(present.values()), sum(absent.values())
            cond = (n_p / n) * _entropy(present) + (n_a / n) * _entropy(absent)
            scores[f] = max(0.0, h_labels - cond)
    elif metric == CHI_SQUARE:
        classes = sorted(label_counts)
        for f in features:
            present = Counter()
            for has, label in zip(presence[f], labels):
                if has:
                    present[label] += 1
            n_p = sum(present.values())
            chi = 0.0
            for cls in classes:
                for has in (True, False):
                    observed = present[cls] if has else label_counts[cls] - present[cls]
                    expected = (n_p if has else n - n_p) * label_counts[cls] / n
                    if expected > 0:
                        chi += (observed - expected) ** 2 / expected
            scores[f] = chi
    else:
        raise ValueError(f"unknown metric {metric!r}")
    return scores


def iterate_expansion(
    corpus: list[EnhancedDocument],
    net: SemanticNetwork,
    cfg: ExpansionConfig,
) -> tuple[list[EnhancedDocument], dict[str, int], dict[str, Coset]]:
    """Iteratively add coset members of the selected features, rank, and
    prune; order-0 features are always kept.

    Returns the enriched documents, the selected features as a map
    concept -> first order reached, and the coset table over selected
    features (for concept-vector construction).
    """
    docs = [
        EnhancedDocument(d.doc_id, d.label, list(d.features)) for d in corpus
    ]
    order0 = {c for d in docs for c in d.order0()}
    selected: dict[str, int] = {c: 0 for c in sorted(order0)}
    coset_cache: dict[str, Coset] = {}

    def coset_of(owner: str) -> Coset:
        if owner not in coset_cache:
            coset_cache[owner] = build_coset(net, owner, cfg.relation_types)
        return coset_cache[owner]

    for k in range(1, cfg.max_order + 1):
        additions: dict[str, int] = {}
        for owner in sorted(selected):
            for m in coset_of(owner).members:
                if m.concept not in selected and m.concept not in additions:
                    additions[m.concept] = k

        # Tentative per-document growth: each occurrence of an owner adds
        # one occurrence of every enabled member the document does not
        # already carry, at this document's current order k.
        tentative: list[list[tuple[str, int]]] = []
        grew = False
        for d in docs:
            added: list[tuple[str, int]] = []
            present = d.concepts()
            doc_concepts = Counter(c for c, _ in d.features)
            for owner, count in sorted(doc_concepts.items()):
                if owner not in selected:
                    continue
                for m in coset_of(owner).members:
                    if m.concept not in present and m.concept != owner:
                        added.extend([(m.concept, k)] * count)
                        present.add(m.concept)
            tentative.append(added)
            grew = grew or bool(added)
        if not additions and not grew:
            break

        universe = dict(selected)
        universe.update(additions)
        ranking_docs = [
            EnhancedDocument(d.doc_id, d.label, d.features + extra)
            for d, extra in zip(docs, tentative)
        ]
        scores = rank_features(ranking_docs, cfg.metric)

        if cfg.tau is not None:
            keep = {
                c for c in universe
                if universe[c] == 0 or scores.get(c, 0.0) >= cfg.tau
            }
        else:
            ranked = sorted(
                (c for c in universe if universe[c] > 0),
                key=lambda c: (-scores.get(c, 0.0), universe[c], c),
            )
            keep = {c for c in universe if universe[c] == 0}
            keep.update(ranked[:DEFAULT_TOP_FEATURES])

        new_selected = {c: o for c, o in sorted(universe.items()) if c in keep}
        new_docs_changed = False
        for d, extra in zip(docs, tentative):
            kept_extra = [(c, o) for c, o in extra if c in keep]
            pruned = [(c, o) for c, o in d.features if o == 0 or c in keep]
            if kept_extra or len(pruned) != len(d.features):
                new_docs_changed = True
            d.features = pruned + kept_extra
        if new_selected == selected and not new_docs_changed:
            break
        selected = new_selected

    coset_table = {
        c: build_coset(net, c, cfg.relation_types) for c in sorted(selected)
    }
    return docs, selected, coset_table


def concept_vector(owner: str, coset_table: dict[str, Coset], gamma: float = DEFAULT_GAMMA) -> ConceptVector:
    """Unit vector for a concept: 1 at the owner, weight * gamma^order per
    coset member, L2-normalized.  Parallel relations to the same member
    keep the strongest contribution so the owner entry stays maximal."""
    if not 0.0 < gamma <= 1.0:
        raise ValueError("gamma must be in (0, 1]")
    if owner not in coset_table:
        raise NotFound(f"no coset entry for {owner!r}")
    values: dict[str, float] = {owner: 1.0}
    for m in coset_table[owner].members:
        contribution = m.weight * gamma**m.order
        if contribution > values.get(m.concept, 0.0):
            values[m.concept] = contribution
    norm = math.sqrt(sum(v * v for v in values.values()))
    return ConceptVector({c: v / norm for c, v in sorted(values.items())})


def document_vector(doc: EnhancedDocument, vectors: dict[str, ConceptVector]) -> ConceptVector:
    """Normalized sum of concept vectors over the document's feature multiset."""
    if not doc.features:
        raise EmptyDocument(f"document {doc.doc_id!r} has no features")
    acc: dict[str, float] = {}
    for concept, _ in doc.features:
        vec = vectors.get(concept)
        if vec is None:
            raise NotFound(f"no concept vector for {concept!r}")
        for cid, v in vec.values.items():
            acc[cid] = acc.get(cid, 0.0) + v
    norm = math.sqrt(sum(v * v for v in acc.values()))
    if norm == 0.0:
        raise EmptyDocument(f"document {doc.doc_id!r} sums to the zero vector")
    return ConceptVector({c: v / norm for c, v in sorted(acc.items())})


def cooccurrence_vectors(
    streams: list[list[str]], window: int
) -> dict[str, CooccurrenceVector]:
    """Count, for every id, the occurrences of other ids within +-window
    positions across all streams."""
    if window < 1:
        raise ValueError("window must be >= 1")
    counts: dict[str, Counter] = {}
    for stream in streams:
        for i, w in enumerate(stream):
            counts.setdefault(w, Counter())
            lo = max(0, i - window)
            hi = min(len(stream), i + window + 1)
            for j in range(lo, hi):
                if j != i:
                    counts[w][stream[j]] += 1
    return {
        w: CooccurrenceVector(values=dict(sorted(c.items())), window=window)
        for w, c in sorted(counts.items())
    }


def cooccurrence_similarity(
    table: dict[str, CooccurrenceVector], w1: str, w2: str
) -> float:
    """Dot product of two co-occurrence vectors (the co-occurrence baseline)."""
    u = table.get(w1)
    v = table.get(w2)
    if u is None or v is None:
        return 0.0
    a, b = u.values, v.values
    if len(a) > len(b):
        a, b = b, a
    return float(sum(val * b.get(k, 0) for k, val in a.items()))


@dataclass
class CorpusDoc:
    doc_id: str
    label: str | None
    text: str


def documents_from_corpus(
    corpus: list[CorpusDoc],
    net: SemanticNetwork,
    stoplist: frozenset[str] | None = None,
    max_senses: int | None = None,
    disambiguate: bool = True,
) -> list[EnhancedDocument]:
    """Run the text pipeline over raw documents and emit order-0 features.

    Ambiguous mentions are resolved by activation competition when
    ``disambiguate`` is set; otherwise every candidate becomes a feature.
    """
    from .textproc import DEFAULT_MAX_SENSES, build_stem_index, map_concepts, preprocess
    from .wsd import disambiguate_activation

    index = build_stem_index(net)
    out: list[EnhancedDocument] = []
    for doc in corpus:
        tokens = preprocess(doc.text, stoplist)
        mentions = map_concepts(
            tokens, net, max_senses or DEFAULT_MAX_SENSES, stem_index=index
        )
        features: list[tuple[str, int]] = []
        if mentions and disambiguate and any(len(m.candidates) > 1 for m in mentions):
            graph = disambiguate_activation(mentions, net)
            for idx in range(len(mentions)):
                features.append((graph.chosen[idx], 0))
        else:
            for m in mentions:
                if m.chosen is not None:
                    features.append((m.chosen, 0))
                else:
                    features.extend((c, 0) for c in m.candidates)
        out.append(EnhancedDocument(doc.doc_id, doc.label, features))
    return out
