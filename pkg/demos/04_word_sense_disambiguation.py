"""Both disambiguation procedures on the bank/ball fixtures:

1. activation competition: every sense gets seeded, the mentioned context
   resonates with the right one, and winner-takes-most suppresses the rest;
2. reference-corpus synset counting: scan reference texts once, count
   synsets, then tag a target text with the highest-count synsets.

Run from the repo root:  python demos/04_word_sense_disambiguation.py
"""

from semmem import ingest_network
from semmem.textproc import map_concepts, preprocess
from semmem.wsd import (
    SynsetInventory,
    annotate_synsets,
    build_reference_counts,
    disambiguate_activation,
)

net = ingest_network("fixtures/triples.tsv", "fixtures/lexicon.jsonl")

print("== Activation-based disambiguation ==")
for text in (
    "The ball bounces after a kick towards the goal.",
    "music played at the ball while couples dance",
    "the river bank near the water",
    "money deposited at the bank",
):
    mentions = map_concepts(preprocess(text), net)
    graph = disambiguate_activation(mentions, net)
    row = {m.matched_surface: graph.chosen[i] for i, m in enumerate(mentions)
           if len(m.candidates) > 1}
    print(f"  {text!r}")
    print(f"    chosen: {row}  (score {graph.score:.3f}, converged {graph.converged})")
print()

print("== Reference-corpus synset counting ==")
inventory = SynsetInventory.load("fixtures/synsets.jsonl")
reference = open("fixtures/reference.txt", encoding="utf-8").read()
counts = build_reference_counts([reference], inventory, net)
print(f"  reference: {reference.strip()!r}")
print("  counts:", {k: v for k, v in sorted(counts.counts.items())})

target = "the river bank near the water"
print(f"\n  tagging {target!r}:")
for token in annotate_synsets(target, counts, inventory, net):
    if token.concept:
        flags = f" flags={list(token.flags)}" if token.flags else ""
        print(f"    {token.surface:<8} -> {token.concept:<12} synset={token.synset}{flags}")
