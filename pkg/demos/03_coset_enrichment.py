"""Coset text enrichment end to end: map a labeled corpus to concepts,
expand with network neighborhoods, rank features against the labels,
prune, vectorize, and show which added concepts carry the class signal.

Run from the repo root:  python demos/03_coset_enrichment.py
"""

import json

from semmem import ingest_network
from semmem.coset import (
    CorpusDoc,
    ExpansionConfig,
    concept_vector,
    document_vector,
    documents_from_corpus,
    iterate_expansion,
    rank_features,
)

net = ingest_network("fixtures/triples.tsv", "fixtures/lexicon.jsonl")
corpus = []
with open("fixtures/corpus.jsonl", encoding="utf-8") as fh:
    for line in fh:
        rec = json.loads(line)
        corpus.append(CorpusDoc(rec["id"], rec["label"], rec["text"]))

docs = documents_from_corpus(corpus, net)
print("Order-0 features (the mapped mentions):")
for d in docs:
    print(f"  {d.doc_id} [{d.label}]: {[c for c, _ in d.features]}")
print()

cfg = ExpansionConfig(
    relation_types=frozenset({"is_a", "used_in", "can", "part_of", "involves",
                              "makes", "located_in", "affords"}),
    max_order=2,
    tau=0.2,
)
enriched, selected, table = iterate_expansion(docs, net, cfg)
print(f"Selected features after expansion+pruning (tau={cfg.tau}):")
for concept, order in selected.items():
    print(f"  order {order}: {concept}")
print()

scores = rank_features(enriched)
print("Information gain of each surviving feature (bits):")
for concept, score in sorted(scores.items(), key=lambda kv: -kv[1]):
    print(f"  {concept:<14} {score:.4f}")
print()

vectors = {c: concept_vector(c, table) for c in selected}
doc_vecs = {d.doc_id: document_vector(d, vectors) for d in enriched}
d1, d4 = doc_vecs["d1"], doc_vecs["d4"]
d2 = doc_vecs["d2"]
print("Document similarity in the enhanced space (cosine):")
print(f"  d1~d2 (both sports):     {d1.dot(d2):.3f}")
print(f"  d1~d4 (sports~household): {d1.dot(d4):.3f}")
