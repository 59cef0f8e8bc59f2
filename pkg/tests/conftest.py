import pathlib

import pytest

from semmem.network import Concept, Relation, build_network, ingest_network

REPO = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture(scope="session")
def ball_net():
    return ingest_network(str(FIXTURES / "triples.tsv"), str(FIXTURES / "lexicon.jsonl"))


@pytest.fixture()
def tiny_net():
    """Two concepts, one edge: the smallest propagation fixture."""
    return build_network(
        [
            Concept("a", "a", ("a",)),
            Concept("b", "b", ("b",)),
        ],
        [Relation("a", "points_at", "b", 1.0)],
    )


def make_sense_fixture():
    """Resonant mini-network: two senses of one surface, play context wired
    so kick/goal can ignite the toy sense."""
    concepts = [
        Concept("ball_dance", "ball", ("ball",), "event"),
        Concept("ball_toy", "ball", ("ball",), "object"),
        Concept("kick", "kick", ("kick",), "action"),
        Concept("goal", "goal", ("goal",), "object"),
        Concept("music", "music", ("music",), "domain"),
        Concept("dance", "dance", ("dance",), "activity"),
    ]
    relations = [
        Relation("kick", "acts_on", "ball_toy", 0.9),
        Relation("ball_toy", "affords", "kick", 0.9),
        Relation("goal", "scored_with", "ball_toy", 0.9),
        Relation("ball_toy", "aims_at", "goal", 0.9),
        Relation("music", "accompanies", "ball_dance", 0.9),
        Relation("ball_dance", "involves", "music", 0.9),
        Relation("dance", "includes", "ball_dance", 0.9),
        Relation("ball_dance", "is_a", "dance", 0.9),
    ]
    return build_network(concepts, relations)


@pytest.fixture()
def sense_net():
    return make_sense_fixture()
