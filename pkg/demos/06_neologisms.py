"""Invent new words: combine morphemes, score them with a character n-gram
model (phonological plausibility) and a lexicon association count, and
filter out anything that already exists.

Run from the repo root:  python demos/06_neologisms.py
"""

from semmem import ingest_network
from semmem.neologism import filter_novel, generate, train_ngram

net = ingest_network("fixtures/triples.tsv", "fixtures/lexicon.jsonl")
lexicon = frozenset(s for s in net.lexicon if " " not in s)

model = train_ngram(sorted(lexicon), n=3, alpha=0.1)
print(f"Trained a {model.order}-gram model on {len(lexicon)} lexicon words "
      f"(alphabet {len(model.alphabet)} symbols)\n")

morphemes = [line.strip() for line in open("fixtures/morphemes.txt") if line.strip()]
print("Morphemes:", morphemes, "\n")

candidates = generate(model, morphemes, count=12, seed=42, lexicon=lexicon)
novel = filter_novel(candidates, lexicon)
print("Top novel candidates (score = 0.5*z(logp) + 0.5*z(assoc)):")
print(f"  {'word':<16} {'logp':>8} {'assoc':>5} {'score':>6}")
for c in novel:
    print(f"  {c.word:<16} {c.logp:>8.3f} {c.assoc:>5} {c.score:>6.3f}")

print("\n'assoc' counts lexicon words sharing a constituent: 'ball' links to",
      sorted(w for w in lexicon if "ball" in w))
