"""Seeded synthetic corpus generator for the enrichment-improves-clustering
experiment.

Every document's surface forms are unique to that document, so documents
share no vocabulary at all; class membership is only recoverable through
the network, where each document's signal concepts point at a shared
class hub.  Filler concepts point at one noise hub common to all classes,
which feature ranking is expected to prune.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coset import CorpusDoc
from .network import Concept, Relation, SemanticNetwork, build_network


@dataclass
class SynthCorpus:
    net: SemanticNetwork
    docs: list[CorpusDoc]
    classes: list[str]
    gold: dict[str, str]


def make_synonym_corpus(
    seed: int,
    n_docs: int = 120,
    n_classes: int = 3,
    signal_range: tuple[int, int] = (2, 4),
    noise_range: tuple[int, int] = (1, 3),
) -> SynthCorpus:
    """Generate a labeled corpus whose class signal lives in the network.

    Each document gets 2-4 fresh signal concepts (edges to its class hub)
    and 1-3 fresh noise concepts (edges to the shared noise hub).  Surface
    forms are doc-unique, so order-0 document vectors are pairwise
    orthogonal.
    """
    rng = np.random.default_rng(seed)
    classes = [f"class{c}" for c in range(n_classes)]

    concepts: list[Concept] = []
    relations: list[Relation] = []
    for c in range(n_classes):
        hub = f"hub_{classes[c]}"
        concepts.append(Concept(hub, f"hub{c}", (f"hub{c}",), "hub"))
    concepts.append(Concept("hub_noise", "noisehub", ("noisehub",), "hub"))

    docs: list[CorpusDoc] = []
    gold: dict[str, str] = {}
    labels = [classes[i % n_classes] for i in range(n_docs)]
    rng.shuffle(labels)
    for d in range(n_docs):
        label = labels[d]
        words: list[str] = []
        n_signal = int(rng.integers(signal_range[0], signal_range[1] + 1))
        n_noise = int(rng.integers(noise_range[0], noise_range[1] + 1))
        for s in range(n_signal):
            cid = f"sig_{d}_{s}"
            surface = f"w{d}x{s}"
            concepts.append(Concept(cid, surface, (surface,), "signal"))
            relations.append(Relation(cid, "indicates", f"hub_{label}", 1.0))
            words.append(surface)
        for s in range(n_noise):
            cid = f"noise_{d}_{s}"
            surface = f"f{d}x{s}"
            concepts.append(Concept(cid, surface, (surface,), "noise"))
            relations.append(Relation(cid, "indicates", "hub_noise", 1.0))
            words.append(surface)
        rng.shuffle(words)
        doc_id = f"doc{d:03d}"
        docs.append(CorpusDoc(doc_id, label, " ".join(words)))
        gold[doc_id] = label

    net = build_network(concepts, relations)
    return SynthCorpus(net=net, docs=docs, classes=classes, gold=gold)
