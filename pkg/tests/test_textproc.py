import pytest

from semmem import porter
from semmem.activation import ActivationConfig, ActivationVector, propagate, snapshot
from semmem.errors import AlreadyKnown
from semmem.textproc import (
    build_stem_index,
    edit_distance,
    map_concepts,
    preprocess,
    suggest_spelling,
)

from .porter_reference import REFERENCE_STEMS


class TestPorter:
    def test_reference_word_list(self):
        mismatches = {
            word: (porter.stem(word), expected)
            for word, expected in REFERENCE_STEMS.items()
            if porter.stem(word) != expected
        }
        assert mismatches == {}

    def test_short_and_nonalpha_unchanged(self):
        assert porter.stem("a") == "a"
        assert porter.stem("x9") == "x9"
        assert porter.stem("1234") == "1234"


class TestPreprocess:
    def test_stoplist_and_stems(self):
        tokens = preprocess("A ball can bounce.", {"a", "can"})
        assert [(t.surface, t.stem) for t in tokens] == [("ball", "ball"), ("bounce", "bounc")]

    def test_empty_text(self):
        assert preprocess("", set()) == []

    def test_collocation_sentence_surfaces(self):
        tokens = preprocess("coffee is made in a coffee maker", {"is", "in", "a"})
        assert [t.surface for t in tokens] == ["coffee", "made", "coffee", "maker"]

    def test_positions_pre_removal(self):
        tokens = preprocess("coffee is made in a coffee maker", {"is", "in", "a"})
        assert [t.position for t in tokens] == [0, 2, 5, 6]

    def test_char_spans_slice_source(self):
        text = "The Ball bounced."
        for token in preprocess(text, set()):
            start, end = token.char_span
            assert text[start:end].lower() == token.surface

    def test_apostrophes_stay_inside_tokens(self):
        tokens = preprocess("don't panic", set())
        assert [t.surface for t in tokens] == ["don't", "panic"]

    def test_idempotent_on_own_output(self):
        tokens = preprocess("Balls bounce; kicks score goals!", set())
        rejoined = " ".join(t.surface for t in tokens)
        again = preprocess(rejoined, set())
        assert [t.surface for t in again] == [t.surface for t in tokens]


class TestMapConcepts:
    def test_collocation_longest_match(self, ball_net):
        tokens = preprocess("coffee maker", set())
        mentions = map_concepts(tokens, ball_net)
        assert len(mentions) == 1
        assert mentions[0].span == (0, 2)
        assert mentions[0].candidates == ("coffee_maker",)

    def test_ambiguous_mention_keeps_candidates(self, ball_net):
        mentions = map_concepts(preprocess("ball", set()), ball_net, max_senses=4)
        assert len(mentions) == 1
        assert mentions[0].candidates == ("ball_dance", "ball_toy")
        assert mentions[0].chosen is None

    def test_max_senses_threshold_drops_mention(self, ball_net):
        mentions = map_concepts(preprocess("ball", set()), ball_net, max_senses=1)
        assert mentions == []

    def test_mentions_never_overlap(self, ball_net):
        tokens = preprocess("the coffee maker brews coffee near the coffee maker", set())
        mentions = map_concepts(tokens, ball_net)
        spans = [m.span for m in mentions]
        for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
            assert e1 <= s2

    def test_inflected_single_token_maps_by_stem(self, ball_net):
        mentions = map_concepts(preprocess("kicking", set()), ball_net)
        assert [m.candidates for m in mentions] == [("kick",)]

    def test_independent_of_lexicon_order(self, ball_net):
        # the stem index is rebuilt from sorted structures; two builds agree
        idx1 = build_stem_index(ball_net)
        idx2 = build_stem_index(ball_net)
        assert idx1 == idx2


def brute_force_suggestions(token, context, net, max_edits):
    """Independent oracle: recursive memoized edit distance over the whole
    lexicon, scored by summed candidate-concept activation."""
    from functools import lru_cache

    def dist(a, b):
        @lru_cache(maxsize=None)
        def rec(i, j):
            if i == 0:
                return j
            if j == 0:
                return i
            return min(
                rec(i - 1, j) + 1,
                rec(i, j - 1) + 1,
                rec(i - 1, j - 1) + (a[i - 1] != b[j - 1]),
            )
        return rec(len(a), len(b))

    rows = []
    for surface, ids in net.lexicon.items():
        if surface == token or not surface or surface[0] != token[0]:
            continue
        d = dist(token, surface)
        if d <= max_edits:
            score = sum(context.coefficients.get(c, 0.0) for c in ids)
            rows.append((surface, score, d))
    rows.sort(key=lambda r: (-r[1], r[2], r[0]))
    return [(surface, score) for surface, score, _ in rows]


class TestSuggestSpelling:
    def test_context_ranks_ball_first(self, ball_net):
        state = propagate(ball_net, {"kick": 1.0, "goal": 1.0}, ActivationConfig())
        context = snapshot(state)
        assert context.coefficients.get("ball_toy", 0.0) > 0.0
        got = suggest_spelling("bal", context, ball_net, max_edits=1)
        assert got[0][0] == "ball"
        assert got == brute_force_suggestions("bal", context, ball_net, 1)

    def test_edit_distance_tiebreak_on_empty_context(self):
        from semmem.network import Concept, build_network

        net = build_network(
            [Concept("ball_c", "ball", ("ball", "balls"), "object")], []
        )
        got = suggest_spelling("bal", ActivationVector(), net, max_edits=2)
        assert got == [("ball", 0.0), ("balls", 0.0)]
        dists = [edit_distance("bal", s) for s, _ in got]
        assert dists == sorted(dists)

    def test_known_token_rejected(self, ball_net):
        with pytest.raises(AlreadyKnown):
            suggest_spelling("ball", ActivationVector(), ball_net)

    def test_no_candidates_within_edits(self, ball_net):
        assert suggest_spelling("zzzzzz", ActivationVector(), ball_net, max_edits=1) == []

    def test_first_letter_preserved_and_input_absent(self, ball_net):
        got = suggest_spelling("bxll", ActivationVector(), ball_net, max_edits=2)
        assert got
        for surface, _ in got:
            assert surface[0] == "b"
            assert surface != "bxll"

    def test_oracle_agreement_randomized(self, ball_net):
        import random

        rng = random.Random(7)
        surfaces = sorted(s for s in ball_net.lexicon if " " not in s)
        for _ in range(25):
            base = rng.choice(surfaces)
            pos = rng.randrange(len(base))
            typo = base[:pos] + rng.choice("abcdefghijklmnopqrstuvwxyz") + base[pos + 1:]
            if typo in ball_net.lexicon:
                continue
            weights = {
                c: round(rng.random(), 3)
                for c in rng.sample(sorted(ball_net.concepts), 5)
            }
            context = ActivationVector({k: v for k, v in weights.items() if v > 0})
            got = suggest_spelling(typo, context, ball_net, max_edits=2)
            assert got == brute_force_suggestions(typo, context, ball_net, 2)
