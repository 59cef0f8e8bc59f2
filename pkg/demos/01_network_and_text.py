"""Walk through the semantic network: load the fixture world, look up
ambiguous surfaces, follow relations, and map raw text to concept mentions.

Run from the repo root:  python demos/01_network_and_text.py
"""

from semmem import ingest_network, lookup, neighbors
from semmem.textproc import map_concepts, preprocess

net = ingest_network("fixtures/triples.tsv", "fixtures/lexicon.jsonl")
print(f"Loaded {len(net)} concepts, {len(net.relations())} relations, "
      f"{len(net.lexicon)} surfaces ({len(net.collocations)} collocations)\n")

print("One surface, several senses (the lexicon is many-to-many):")
print("  lookup('ball') ->", lookup(net, "ball"))
print("  lookup('Ball') ->", lookup(net, "Ball"), "(case-folded)\n")

print("Relations of ball_toy, sorted and typed:")
for target, rel, weight, polarity in neighbors(net, "ball_toy"):
    print(f"  ball_toy --{rel}({weight:.1f},{polarity})--> {target}")
print()

print("Sense siblings compete automatically (wired at ingest):")
for target, rel, weight, polarity in neighbors(net, "ball_toy", {"competes_with"}):
    print(f"  ball_toy --{rel}--> {target}  [{polarity}]")
print()

text = "The ball bounces after a kick towards the goal."
tokens = preprocess(text)
print(f"Tokens of {text!r}:")
print("  ", [(t.surface, t.stem) for t in tokens])

mentions = map_concepts(tokens, net)
print("Concept mentions (longest collocation match first, then single tokens):")
for m in mentions:
    print(f"  span {m.span} {m.matched_surface!r} -> candidates {list(m.candidates)}")
