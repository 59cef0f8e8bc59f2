"""semmem: a semantic-memory engine.

Spreading activation over a typed concept network, coset-based text
enrichment, word-sense disambiguation, an active 20-questions dialogue,
neologism generation, and clustering/MDS evaluation over the enriched
document space.
"""

from .activation import (
    ActivationConfig,
    ActivationState,
    ActivationVector,
    overlap,
    propagate,
    snapshot,
    winner_take_most,
)
from .cluster import (
    ClusterResult,
    adjusted_rand_index,
    cluster_documents,
    cosine_distance_matrix,
    emit_plot,
    mds_embed,
    purity_score,
)
from .coset import (
    ConceptVector,
    CooccurrenceVector,
    CorpusDoc,
    Coset,
    CosetMember,
    EnhancedDocument,
    ExpansionConfig,
    build_coset,
    concept_vector,
    cooccurrence_similarity,
    cooccurrence_vectors,
    document_vector,
    documents_from_corpus,
    iterate_expansion,
    rank_features,
)
from .errors import (
    AlreadyKnown,
    ConvergenceError,
    CorruptLog,
    DegenerateLabels,
    EmptyDocument,
    EmptyReferenceCorpus,
    Exhausted,
    IngestError,
    NotFound,
    SemmemError,
)
from .game import (
    Feature,
    KnowledgeMatrix,
    Posterior,
    ScriptedOracle,
    SessionConfig,
    best_question,
    expected_gains,
    matrix_from_network,
    run_session,
    teach,
    uniform_posterior,
    update_posterior,
)
from .neologism import Candidate, NgramModel, filter_novel, generate, train_ngram
from .network import (
    Concept,
    Relation,
    SemanticNetwork,
    build_network,
    ingest_network,
    lookup,
    neighbors,
)
from .synth import SynthCorpus, make_synonym_corpus
from .textproc import (
    ConceptMention,
    Token,
    default_stoplist,
    load_stoplist,
    map_concepts,
    preprocess,
    suggest_spelling,
)
from .wsd import (
    ConsistentConceptGraph,
    Synset,
    SynsetCountTable,
    SynsetInventory,
    annotate_synsets,
    build_reference_counts,
    disambiguate_activation,
)

__version__ = "0.1.0"
