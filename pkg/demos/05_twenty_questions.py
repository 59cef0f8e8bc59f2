"""The 20-questions engine playing against a scripted answerer: watch the
posterior sharpen as each maximum-information-gain question lands, then
teach the matrix a brand-new concept and identify it.

Run from the repo root:  python demos/05_twenty_questions.py
"""

from semmem.game import (
    KnowledgeMatrix,
    ScriptedOracle,
    SessionConfig,
    best_question,
    expected_gains,
    run_session,
    teach,
    uniform_posterior,
    update_posterior,
)

kb = KnowledgeMatrix.load("fixtures/kb.json")
print(f"Knowledge matrix: {len(kb.concepts)} concepts x {len(kb.features)} features")
print("Concepts:", ", ".join(kb.concepts), "\n")

print("Step-by-step session (the answerer is thinking of 'goldfish'):")
posterior = uniform_posterior(kb)
oracle = ScriptedOracle(kb, "goldfish")
for round_no in range(1, 6):
    gains = expected_gains(posterior, kb)
    feature = best_question(posterior, kb)
    answer = oracle(feature)
    posterior = update_posterior(posterior, kb, feature, answer)
    top_concept, top_prob = posterior.top(1)[0]
    print(f"  Q{round_no}: {kb.question_text(feature):<34} gain={gains[feature]:.3f}"
          f" answer={answer:<3} -> top: {top_concept} ({top_prob:.2f})")
    if top_prob >= 0.9:
        break
print(f"  guess: {posterior.argmax()}\n")

print("Teaching a new concept ('dragon') and playing again:")
kb2 = teach(kb, "dragon", [
    ("has_fur", 0.0), ("can_fly", 1.0), ("lives_in_water", 0.0),
    ("is_large", 1.0), ("is_pet", 0.0), ("breathes_fire", 1.0),
])
for concept in kb.concepts:
    kb2 = teach(kb2, concept, [("breathes_fire", 0.0)])
guess, transcript = run_session(kb2, ScriptedOracle(kb2, "dragon"), SessionConfig())
print(f"  identified: {guess} in {transcript[-1]['questions']} questions")

print("\nNoise tolerance: 10% of answers flipped, 50 sessions:")
correct = 0
for seed in range(50):
    true = kb.concepts[seed % len(kb.concepts)]
    noisy = ScriptedOracle(kb, true, eps=0.1, seed=seed)
    guess, _ = run_session(kb, noisy, SessionConfig(eps=0.1, seed=seed))
    correct += guess == true
print(f"  correct: {correct}/50")
