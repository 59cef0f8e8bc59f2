"""Novel-word generation from morphological constituents.

Candidates are concatenations of 2-3 morphemes, scored by a character
n-gram model trained on a word list (phonological plausibility) and by
how many lexicon words share at least one constituent (associative
strength).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

BOUNDARY = "\x02"  # pads word starts and marks word end; never in real words
DEFAULT_LAMBDA = 0.5
# Above this many morpheme combinations we sample instead of enumerating.
ENUMERATION_LIMIT = 20000


@dataclass(frozen=True)
class NgramModel:
    order: int
    counts: dict[tuple[str, str], int]
    context_totals: dict[str, int]
    alphabet: tuple[str, ...]
    alpha: float

    def prob(self, context: str, char: str) -> float:
        total = self.context_totals.get(context, 0)
        count = self.counts.get((context, char), 0)
        denom = total + self.alpha * len(self.alphabet)
        if denom == 0.0:
            return 0.0
        return (count + self.alpha) / denom

    def logp(self, word: str) -> float:
        """Length-normalized log2 probability, including the end marker."""
        padded = BOUNDARY * (self.order - 1) + word + BOUNDARY
        total = 0.0
        steps = 0
        for i in range(self.order - 1, len(padded)):
            context = padded[i - self.order + 1 : i]
            p = self.prob(context, padded[i])
            if p == 0.0:
                return -math.inf
            total += math.log2(p)
            steps += 1
        return total / steps if steps else -math.inf


@dataclass(frozen=True)
class Candidate:
    word: str
    logp: float
    assoc: int
    score: float

    def to_json_dict(self) -> dict:
        return {
            "word": self.word,
            "logp": self.logp,
            "assoc": self.assoc,
            "score": self.score,
        }


def train_ngram(wordlist: list[str], n: int = 3, alpha: float = 0.1) -> NgramModel:
    """Count boundary-padded character n-grams over the word list."""
    if not wordlist:
        raise ValueError("wordlist must be non-empty")
    if n < 2:
        raise ValueError("n must be >= 2")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    counts: dict[tuple[str, str], int] = {}
    totals: dict[str, int] = {}
    alphabet: set[str] = {BOUNDARY}
    for word in wordlist:
        word = word.strip().lower()
        if not word:
            continue
        alphabet.update(word)
        padded = BOUNDARY * (n - 1) + word + BOUNDARY
        for i in range(n - 1, len(padded)):
            context = padded[i - n + 1 : i]
            key = (context, padded[i])
            counts[key] = counts.get(key, 0) + 1
            totals[context] = totals.get(context, 0) + 1
    return NgramModel(
        order=n,
        counts=counts,
        context_totals=totals,
        alphabet=tuple(sorted(alphabet)),
        alpha=alpha,
    )


def _minmax(values: list[float]) -> list[float]:
    finite = [v for v in values if v != -math.inf]
    if not finite:
        return [0.0] * len(values)
    lo, hi = min(finite), max(finite)
    if hi == lo:
        return [0.0] * len(values)
    return [0.0 if v == -math.inf else (v - lo) / (hi - lo) for v in values]


def _morpheme_word_index(morphemes: list[str], lexicon: set[str]) -> dict[str, frozenset[str]]:
    return {
        m: frozenset(w for w in lexicon if m in w) for m in morphemes
    }


def generate(
    model: NgramModel,
    morphemes: list[str],
    count: int,
    seed: int = 0,
    lexicon: set[str] | frozenset[str] | None = None,
    weight: float = DEFAULT_LAMBDA,
) -> list[Candidate]:
    """Combine 2-3 morphemes into candidate words ranked by
    score = weight * z(logp) + (1 - weight) * z(assoc).

    assoc counts lexicon words sharing at least one constituent morpheme.
    Enumerates all combinations when feasible, otherwise samples with the
    given seed.  Ties in score break lexicographically.
    """
    if len(morphemes) < 2:
        raise ValueError("need at least two morphemes")
    if count < 1:
        raise ValueError("count must be >= 1")
    morphemes = sorted({m.strip().lower() for m in morphemes if m.strip()})
    lexicon = lexicon or frozenset()
    by_morpheme = _morpheme_word_index(morphemes, set(lexicon))

    n = len(morphemes)
    total = n * n + n * n * n
    combos: list[tuple[str, ...]]
    if total <= ENUMERATION_LIMIT:
        combos = [
            *itertools.product(morphemes, repeat=2),
            *itertools.product(morphemes, repeat=3),
        ]
    else:
        rng = random.Random(seed)
        seen: set[tuple[str, ...]] = set()
        while len(seen) < ENUMERATION_LIMIT:
            length = rng.choice((2, 3))
            seen.add(tuple(rng.choice(morphemes) for _ in range(length)))
        combos = sorted(seen)

    words: dict[str, tuple[str, ...]] = {}
    for combo in combos:
        word = "".join(combo)
        if word not in words:
            words[word] = combo

    rows = []
    for word in sorted(words):
        combo = words[word]
        shared = frozenset().union(*(by_morpheme[m] for m in set(combo)))
        rows.append((word, model.logp(word), len(shared)))

    z_logp = _minmax([r[1] for r in rows])
    z_assoc = _minmax([float(r[2]) for r in rows])
    candidates = [
        Candidate(word, logp, assoc, weight * zl + (1.0 - weight) * za)
        for (word, logp, assoc), zl, za in zip(rows, z_logp, z_assoc)
    ]
    candidates.sort(key=lambda c: (-c.score, c.word))
    return candidates[:count]


def filter_novel(candidates: list[Candidate], lexicon: set[str] | frozenset[str]) -> list[Candidate]:
    """Drop candidates already present in the lexicon; order preserved."""
    return [c for c in candidates if c.word not in lexicon]
