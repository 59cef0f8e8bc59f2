"""Spreading activation: seed a context, watch it settle into a
quasi-stationary state, snapshot it, and compare contexts by overlap.

Run from the repo root:  python demos/02_spreading_activation.py
"""

from semmem import ingest_network
from semmem.activation import ActivationConfig, overlap, propagate, snapshot

net = ingest_network("fixtures/triples.tsv", "fixtures/lexicon.jsonl")
cfg = ActivationConfig()  # decay 0.7, gain 0.6, threshold 1e-3

print("Seeding the play context {kick, goal}:")
play = propagate(net, {"kick": 1.0, "goal": 1.0}, cfg)
print(f"  converged={play.converged} after {play.iteration} iterations")
for cid, value in sorted(play.activations.items(), key=lambda kv: -kv[1]):
    if value > 0:
        print(f"  {cid:<12} {value:.4f}")
print()

print("Seeding the party context {music, dance}:")
party = propagate(net, {"music": 1.0, "dance": 1.0}, cfg)
for cid, value in sorted(party.activations.items(), key=lambda kv: -kv[1]):
    if value > 0:
        print(f"  {cid:<12} {value:.4f}")
print()

u, v = snapshot(play), snapshot(party)
print("State overlaps (orthonormal concept basis):")
print(f"  <play|play>   = {overlap(u, u):.4f}")
print(f"  <play|party>  = {overlap(u, v):.4f}   (the two contexts barely touch)")

print("\nDecay sanity check: an isolated seed just fades away.")
solo = propagate(net, {"bald": 1.0}, ActivationConfig(threshold=0.01))
print(f"  bald after convergence: {solo.activations['bald']} "
      f"(iterations: {solo.iteration})")
