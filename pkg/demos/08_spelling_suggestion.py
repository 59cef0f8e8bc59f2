"""Context-aware spelling suggestion: an unknown token is repaired against
the lexicon, ranked by how strongly the current context activates each
candidate's concepts.

Run from the repo root:  python demos/08_spelling_suggestion.py
"""

from semmem import ingest_network
from semmem.activation import ActivationConfig, ActivationVector, propagate, snapshot
from semmem.textproc import suggest_spelling

net = ingest_network("fixtures/triples.tsv", "fixtures/lexicon.jsonl")

print("Misspelled token: 'bal' (not in the lexicon)\n")

print("Without context, candidates rank by edit distance, then alphabetically:")
for surface, score in suggest_spelling("bal", ActivationVector(), net, max_edits=2):
    print(f"  {surface:<8} score={score:.3f}")
print()

context_state = propagate(net, {"kick": 1.0, "goal": 1.0}, ActivationConfig())
context = snapshot(context_state)
print("After reading about kicks and goals (context primes the play sense):")
for surface, score in suggest_spelling("bal", context, net, max_edits=2):
    print(f"  {surface:<8} score={score:.3f}")
print()

money_state = propagate(net, {"money": 1.0}, ActivationConfig())
money_context = snapshot(money_state)
print("A money context pulls a different repair for 'bnk':")
for surface, score in suggest_spelling("bnk", money_context, net, max_edits=2):
    print(f"  {surface:<8} score={score:.3f}")
