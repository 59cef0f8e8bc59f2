"""Text pipeline: tokenization, stop-list, stemming, concept mapping, and
context-aware spelling suggestion.

All functions are pure over immutable inputs and safe to run document-
parallel.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from . import porter
from .activation import ActivationVector
from .errors import AlreadyKnown
from .network import SemanticNetwork, lookup, normalize_surface

# Maximal runs of letters/digits with internal apostrophes.
_TOKEN_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*")

DEFAULT_MAX_SENSES = 8
DEFAULT_MAX_EDITS = 2


@dataclass(frozen=True)
class Token:
    surface: str
    position: int           # token index before stop-list removal
    char_span: tuple[int, int]
    stem: str


@dataclass
class ConceptMention:
    span: tuple[int, int]    # [start, end) indices into the token list
    matched_surface: str
    candidates: tuple[str, ...]
    chosen: str | None = None


def default_stoplist() -> frozenset[str]:
    text = resources.files("semmem").joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


def load_stoplist(path: str) -> frozenset[str]:
    with open(path, encoding="utf-8") as fh:
        return frozenset(
            normalize_surface(line) for line in fh if line.strip()
        )


def preprocess(text: str, stoplist: frozenset[str] | set[str] | None = None) -> list[Token]:
    """Tokenize, lowercase, drop stop-list members, and attach Porter stems.

    Token positions refer to the pre-removal numbering, so downstream
    consumers can reconstruct gaps left by removed tokens.
    """
    if stoplist is None:
        stoplist = default_stoplist()
    tokens: list[Token] = []
    for position, match in enumerate(_TOKEN_RE.finditer(text)):
        surface = match.group(0).lower()
        if surface in stoplist:
            continue
        tokens.append(
            Token(
                surface=surface,
                position=position,
                char_span=(match.start(), match.end()),
                stem=porter.stem(surface),
            )
        )
    return tokens


@dataclass(frozen=True)
class StemIndex:
    """Derived lookup structures keyed by stems (networks store raw surfaces)."""

    collocations: dict[tuple[str, ...], tuple[str, ...]]
    single: dict[str, tuple[str, ...]]
    max_len: int


def build_stem_index(net: SemanticNetwork) -> StemIndex:
    colls: dict[tuple[str, ...], set[str]] = {}
    single: dict[str, set[str]] = {}
    for surface, ids in net.lexicon.items():
        words = surface.split()
        if len(words) > 1:
            key = tuple(porter.stem(w) for w in words)
            colls.setdefault(key, set()).update(ids)
        else:
            single.setdefault(porter.stem(surface), set()).update(ids)
    return StemIndex(
        collocations={k: tuple(sorted(v)) for k, v in colls.items()},
        single={k: tuple(sorted(v)) for k, v in single.items()},
        max_len=max((len(k) for k in colls), default=1),
    )


def map_concepts(
    tokens: list[Token],
    net: SemanticNetwork,
    max_senses: int = DEFAULT_MAX_SENSES,
    stem_index: StemIndex | None = None,
) -> list[ConceptMention]:
    """Map tokens to concept mentions: longest collocation match first
    (on stems), then single-token lookup (surface, falling back to stem).

    Mentions with more than ``max_senses`` candidates are dropped; spans
    never overlap and matching is left-to-right greedy.
    """
    index = stem_index or build_stem_index(net)
    stems = [t.stem for t in tokens]
    mentions: list[ConceptMention] = []
    i = 0
    n = len(tokens)
    while i < n:
        matched = False
        longest = min(index.max_len, n - i)
        for length in range(longest, 1, -1):
            key = tuple(stems[i : i + length])
            ids = index.collocations.get(key)
            if ids:
                if len(ids) <= max_senses:
                    mentions.append(
                        ConceptMention(
                            span=(i, i + length),
                            matched_surface=" ".join(t.surface for t in tokens[i : i + length]),
                            candidates=ids,
                        )
                    )
                i += length
                matched = True
                break
        if matched:
            continue
        ids = tuple(lookup(net, tokens[i].surface)) or index.single.get(stems[i], ())
        if ids and len(ids) <= max_senses:
            mentions.append(
                ConceptMention(span=(i, i + 1), matched_surface=tokens[i].surface, candidates=ids)
            )
        i += 1
    return mentions


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance, classic dynamic program."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def suggest_spelling(
    token: str,
    context: ActivationVector,
    net: SemanticNetwork,
    max_edits: int = DEFAULT_MAX_EDITS,
) -> list[tuple[str, float]]:
    """Rank in-lexicon repairs of an unknown token.

    Candidates keep the token's first letter and lie within ``max_edits``
    edits; they are ranked by summed context activation of their concepts,
    then ascending edit distance, then lexicographically.
    """
    norm = normalize_surface(token)
    if norm in net.lexicon:
        raise AlreadyKnown(f"surface {token!r} is already in the lexicon")
    scored: list[tuple[float, int, str]] = []
    for surface, ids in net.lexicon.items():
        if not surface or not norm or surface[0] != norm[0] or surface == norm:
            continue
        dist = edit_distance(norm, surface)
        if dist > max_edits:
            continue
        score = sum(context.coefficients.get(cid, 0.0) for cid in ids)
        scored.append((score, dist, surface))
    scored.sort(key=lambda row: (-row[0], row[1], row[2]))
    return [(surface, score) for score, _, surface in scored]


@dataclass
class AcronymTable:
    """Optional surface -> surface rewrites applied before concept mapping.

    Hook for acronym/abbreviation expansion; file format is TSV
    ``short<TAB>expansion``, one per line.
    """

    rewrites: dict[str, str] = field(default_factory=dict)

    @classmethod
    def load(cls, path: str) -> "AcronymTable":
        rewrites = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                short, _, expansion = line.partition("\t")
                rewrites[normalize_surface(short)] = normalize_surface(expansion)
        return cls(rewrites)

    def apply(self, text: str) -> str:
        if not self.rewrites:
            return text
        out = []
        for word in text.split():
            out.append(self.rewrites.get(normalize_surface(word), word))
        return " ".join(out)
